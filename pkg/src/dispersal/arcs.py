"""Minimum-cost edgeless dispersal of unit circular arcs in O(n log n).

The circle is rotated so that an uncovered point sits at 0 and unwrapped onto
``[0, |C|)``. The interval block sweep then runs on the unwrapped centres;
whenever the last block's dispersed intervals run past the first block
lifted by one turn, that first block is moved behind the last one (its
centres gain ``|C|``) and merging resumes. This happens at most ``n - 1``
times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import kernels
from ._exact import dense_ranks, scale_to_ints, to_fraction
from .geometry import Arc, Interval, InfeasibleError, WeightedInstance
from .unit import Block


@dataclass(frozen=True)
class ArcInstance:
    """Unit arcs on one circle, given by their start positions in ``[0, |C|)``."""

    starts: tuple
    circumference: Fraction

    def __post_init__(self):
        c = to_fraction(self.circumference)
        if c <= 0:
            raise ValueError("circumference must be positive")
        object.__setattr__(self, "circumference", c)
        object.__setattr__(self, "starts", tuple(to_fraction(s) % c for s in self.starts))

    @classmethod
    def from_instance(cls, instance: WeightedInstance) -> "ArcInstance":
        if instance.kind != "unit_arc":
            raise ValueError(f"expected unit arcs, got {instance.kind}")
        return cls(tuple(a.start for a in instance.objects), instance.circumference)

    @property
    def n(self) -> int:
        return len(self.starts)

    @property
    def normalised(self) -> bool:
        return self.n <= self.circumference

    def arcs(self) -> tuple[Arc, ...]:
        return tuple(Arc(s, self.circumference) for s in self.starts)

    def check_normalised(self):
        if not self.normalised:
            raise InfeasibleError(
                f"{self.n} unit arcs do not fit on a circle of circumference {self.circumference}"
            )


class ArcSolution(NamedTuple):
    dispersal: tuple
    cost: Fraction
    shifts: int
    rotation: Fraction
    blocks: list


def rotate_to_gap(instance: ArcInstance) -> tuple[Fraction, ArcInstance]:
    """Rotate so that an uncovered point lands at 0.

    Returns ``(offset, rotated)`` where ``rotated.starts[i] == (starts[i] +
    offset) mod |C|``. The chosen point is the end of the arc followed by the
    widest uncovered gap (ties: first in start order), so no rotated arc
    crosses 0. When the arcs tile the circle exactly the gap has length zero
    and the point is a boundary between two arcs.
    """
    instance.check_normalised()
    c = instance.circumference
    if instance.n == 0:
        return Fraction(0), instance
    srt = sorted(instance.starts)
    best, best_gap = 0, None
    for i, s in enumerate(srt):
        nxt = srt[i + 1] if i + 1 < len(srt) else srt[0] + c
        # unit arcs sorted by start: the arc starting last reaches furthest
        gap = nxt - s - 1
        if best_gap is None or gap > best_gap:
            best, best_gap = i, gap
    point = srt[best] + 1
    offset = (-point) % c
    return offset, ArcInstance(tuple(s + offset for s in instance.starts), c)


def unwrap(instance: ArcInstance) -> tuple[Interval, ...]:
    """Map arcs that avoid angle 0 to unit intervals on ``[0, |C|]``, sorted by start."""
    c = instance.circumference
    for s in instance.starts:
        if s + 1 > c:
            raise ValueError(f"arc starting at {s} crosses angle 0")
    return tuple(Interval(s + Fraction(1, 2)) for s in sorted(instance.starts))


def solve_arcs(instance: ArcInstance) -> ArcSolution:
    """Full solver output: dispersal, exact cost, shift count and final blocks."""
    instance.check_normalised()
    c = instance.circumference
    n = instance.n
    if n == 0:
        return ArcSolution((), Fraction(0), 0, Fraction(0), [])
    # integers throughout; the factor 2 keeps the centres (start + 1/2) integral
    den, ints = scale_to_ints(instance.starts, (c,))
    den *= 2
    ints = [2 * s for s in ints]
    lap = c.numerator * (den // c.denominator)
    unit, half = den, den // 2

    srt = sorted(ints)
    best, best_gap = 0, None
    for i, s in enumerate(srt):
        nxt = srt[i + 1] if i + 1 < n else srt[0] + lap
        gap = nxt - s - unit
        if best_gap is None or gap > best_gap:
            best, best_gap = i, gap
    offset = -(srt[best] + unit) % lap
    rot = [(s + offset) % lap for s in ints]

    order = sorted(range(n), key=rot.__getitem__)
    adjusted = [rot[j] + half - unit * i for i, j in enumerate(order)]
    slack = lap - unit * n  # one turn lifts c_i - i by |C| - n
    lifted = adjusted + [z + slack for z in adjusted]
    ranks, distinct = dense_ranks(lifted)
    starts, stops, levels, shifts = kernels.pav(ranks, n, cyclic=True)
    if shifts > max(n - 1, 0):
        raise AssertionError(f"{shifts} shifts for {n} arcs")

    d = [0] * n
    blocks = []
    for a, b, lvl in zip(starts, stops, levels):
        level = distinct[lvl]
        blocks.append(Block(a, b, Fraction(level + a * den, den)))
        for e in range(a, b + 1):
            x = (level - lifted[e]) % lap
            d[order[e % n]] = x - lap if 2 * x > lap else x
    total = Fraction(sum(abs(x) for x in d), den)
    return ArcSolution(tuple(Fraction(x, den) for x in d), total, shifts, Fraction(offset, den), blocks)


def disperse_arcs(instance) -> tuple[Fraction, ...]:
    """Optimal edgeless dispersal of unit arcs.

    Accepts an :class:`ArcInstance` or a ``unit_arc`` :class:`WeightedInstance`
    (weights ignored). Displacements are signed arc lengths in
    ``(-|C|/2, |C|/2]``, counterclockwise positive.
    """
    if isinstance(instance, WeightedInstance):
        instance = ArcInstance.from_instance(instance)
    return solve_arcs(instance).dispersal
