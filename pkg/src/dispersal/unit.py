"""Minimum-cost edgeless dispersal of unweighted unit intervals.

Sorted by centre, an optimal dispersal keeps the order, so positions
``x_1 < x_2 < ...`` with gaps of at least 1 are fitted to the centres in
L1. Writing ``x_i = y_i + i`` turns this into L1 isotonic regression of the
adjusted centres ``c_i - i``, solved by pooling adjacent violators: each
block sits contiguously at pitch 1, anchored at the lower median of its
adjusted centres, and two blocks merge exactly when their dispersed
intervals would overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from ._exact import dense_ranks, scale_to_ints, to_fraction


@dataclass(frozen=True)
class Block:
    """Run of centre-sorted intervals ``start..stop`` packed at pitch 1.

    ``anchor`` is the dispersed centre of the first interval.
    """

    start: int
    stop: int
    anchor: Fraction

    def __post_init__(self):
        if self.stop < self.start:
            raise ValueError("empty block")

    @property
    def size(self) -> int:
        return self.stop - self.start + 1

    @property
    def first_position(self) -> Fraction:
        return self.anchor

    @property
    def last_position(self) -> Fraction:
        return self.anchor + (self.stop - self.start)

    @property
    def extent(self) -> tuple[Fraction, Fraction]:
        return self.anchor - Fraction(1, 2), self.last_position + Fraction(1, 2)

    @classmethod
    def fit(cls, sorted_centres: Sequence, start: int, stop: int) -> "Block":
        adjusted = [to_fraction(sorted_centres[j]) - (j - start) for j in range(start, stop + 1)]
        return cls(start, stop, optimal_block_anchor(adjusted))


def optimal_block_anchor(adjusted_centres: Iterable) -> Fraction:
    """Lower median of the adjusted centres.

    Any median minimises ``sum |a_j - t|``; the lower one is the canonical
    choice used throughout the package.
    """
    values = sorted(to_fraction(v) for v in adjusted_centres)
    if not values:
        raise ValueError("anchor of an empty block")
    return values[(len(values) - 1) // 2]


def blocks_should_merge(left: Block, right: Block) -> bool:
    """True when the dispersed ``left`` and ``right`` blocks overlap."""
    if left.stop >= right.start:
        raise ValueError("blocks must cover disjoint index ranges, left before right")
    return right.first_position - left.last_position < 1


def _sorted_order(centres):
    return sorted(range(len(centres)), key=lambda i: centres[i])  # stable on ties


def _solve(centres):
    """Return (order, sorted centres, final blocks) for the linear problem."""
    centres = [to_fraction(c) for c in centres]
    n = len(centres)
    order = _sorted_order(centres)
    srt = [centres[i] for i in order]
    if n == 0:
        return order, srt, []
    den, scaled = scale_to_ints(srt)
    adjusted = [s - den * i for i, s in enumerate(scaled)]
    ranks, distinct = dense_ranks(adjusted)
    starts, stops, levels, _ = kernels.pav(ranks, n)
    blocks = [
        Block(a, b, Fraction(distinct[lvl], den) + a)
        for a, b, lvl in zip(starts, stops, levels)
    ]
    return order, srt, blocks


def unit_blocks(centres: Sequence) -> list[Block]:
    """Final blocks of the optimal dispersal, over the centre-sorted intervals."""
    return _solve(centres)[2]


def disperse_unit_intervals(centres: Sequence) -> tuple[Fraction, ...]:
    """Optimal edgeless dispersal of unit intervals with the given centres.

    The result is indexed like the input. Intervals with equal centres keep
    their input order; every block uses the lower-median anchor.
    """
    order, srt, blocks = _solve(centres)
    d = [Fraction(0)] * len(order)
    for blk in blocks:
        for j in range(blk.start, blk.stop + 1):
            d[order[j]] = blk.anchor + (j - blk.start) - srt[j]
    return tuple(d)
