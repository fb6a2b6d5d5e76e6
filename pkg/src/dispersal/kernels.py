"""Kernel selection.

The Cython extension is used when it was built and ``DISPERSAL_PURE_PYTHON``
is unset; otherwise the pure-Python module takes over. Both expose ``pav``
and ``hungarian`` with identical results.
"""

from __future__ import annotations

import os

from . import _pycore

python = _pycore

try:
    from . import _core as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and not os.environ.get("DISPERSAL_PURE_PYTHON"):
    active = compiled
else:
    active = python

BACKEND = active.BACKEND

# int64 headroom for the Hungarian potentials: |u|, |v| stay below m * max|c|
_INT64_SAFE = 1 << 60


def pav(ranks, n, cyclic=False):
    return active.pav(ranks, n, cyclic)


def hungarian(cost, m):
    """Dispatch to the compiled solver when the integer costs fit in int64."""
    if active is not python and m:
        top = max(cost)
        if top * (m + 1) * 4 < _INT64_SAFE and min(cost) >= 0:
            return active.hungarian(cost, m)
    return python.hungarian(cost, m)
