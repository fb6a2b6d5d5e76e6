"""Exact rational helpers shared by the solvers."""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence


def to_fraction(value) -> Fraction:
    """Convert ``value`` to a Fraction without rounding.

    Accepts ints, Fractions, Decimals, floats (taken at their exact binary
    value) and strings such as ``"3/4"``, ``"-2"`` or ``"0.25"``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def fraction_str(value: Fraction) -> str:
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        d = v.denominator
        if den % d:
            den = den * d // math.gcd(den, d)
    return den


def scale_to_ints(values: Sequence[Fraction], extra: Iterable[Fraction] = ()) -> tuple[int, list[int]]:
    """Return ``(D, [v*D ...])`` with D the lcm of all denominators involved."""
    den = common_denominator(list(values) + list(extra))
    return den, [v.numerator * (den // v.denominator) for v in values]


def dense_ranks(values: Sequence[int]) -> tuple[list[int], list[int]]:
    """Rank-compress ``values``: equal values share a rank, order is kept.

    Returns ``(ranks, distinct)`` where ``distinct[ranks[i]] == values[i]``.
    """
    distinct = sorted(set(values))
    index = {v: r for r, v in enumerate(distinct)}
    return [index[v] for v in values], distinct
