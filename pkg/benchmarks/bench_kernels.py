"""Compare the compiled and pure-Python kernels, alone and inside the solvers.

    python3 benchmarks/bench_kernels.py [--repeats 3] [--quick]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit
from contextlib import contextmanager
from fractions import Fraction

from dispersal import kernels
from dispersal.arcs import ArcInstance, disperse_arcs
from dispersal.unit import disperse_unit_intervals
from dispersal.weighted import disperse_xp


@contextmanager
def backend(module):
    saved = kernels.active
    kernels.active = module
    try:
        yield
    finally:
        kernels.active = saved


def best(fn, repeats):
    return min(timeit.repeat(fn, number=1, repeat=repeats))


def cases(quick):
    rng = random.Random(7)
    sizes = (1 << 12, 1 << 14) if quick else (1 << 12, 1 << 14, 1 << 16)
    for n in sizes:
        ranks = [rng.randrange(n) for _ in range(n)]
        yield f"pav n={n}", lambda r=ranks, n=n: kernels.pav(r, n)
        lifted = ranks + [r + n for r in ranks]
        yield f"pav cyclic n={n}", lambda r=lifted, n=n: kernels.pav(r, n, True)
    for m in (50, 100) if quick else (50, 100, 200):
        cost = [rng.randrange(1000) for _ in range(m * m)]
        yield f"hungarian m={m}", lambda c=cost, m=m: kernels.hungarian(c, m)
    n = 1 << 13 if quick else 1 << 15
    centres = [Fraction(rng.randrange(4 * n), 8) for _ in range(n)]
    yield f"unit intervals n={n}", lambda: disperse_unit_intervals(centres)
    arcs = ArcInstance(tuple(Fraction(rng.randrange(8 * n), 4) for _ in range(n)), 2 * n)
    yield f"arcs n={n}", lambda: disperse_arcs(arcs)
    wc = [Fraction(rng.randrange(40), 4) for _ in range(10)]
    ww = [rng.choice((1, 2, 3, 5)) for _ in range(10)]
    yield "xp n=10", lambda: disperse_xp(wc, ww, workers=1)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--quick", action="store_true", help="smaller sizes")
    args = p.parse_args(argv)
    if kernels.compiled is None:
        print("compiled core not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'case':<26}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, fn in cases(args.quick):
        with backend(kernels.python):
            slow = best(fn, args.repeats)
        with backend(kernels.compiled):
            fast = best(fn, args.repeats)
        print(f"{name:<26}{slow:>12.4f}{fast:>12.4f}{slow / fast:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
