"""Assigning weighted unit intervals to slots by min-cost perfect matching."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import kernels
from ._exact import common_denominator, to_fraction
from .geometry import InfeasibleError, WeightedInstance


@dataclass(frozen=True)
class SlotSet:
    """Candidate centres ``s_1 < s_2 < ...`` at mutual distance at least 1."""

    positions: tuple

    def __post_init__(self):
        pos = tuple(sorted(to_fraction(p) for p in self.positions))
        for a, b in zip(pos, pos[1:]):
            if b - a < 1:
                raise ValueError(f"slots {a} and {b} are closer than 1")
        object.__setattr__(self, "positions", pos)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)


class Matching(NamedTuple):
    assignment: tuple   # column per row
    cost: Fraction
    row_potentials: tuple
    col_potentials: tuple


class Assignment(NamedTuple):
    slots: tuple        # 0-based slot index per interval
    dispersal: tuple
    cost: Fraction


def _scaled_matrix(costs):
    m = len(costs)
    flat = []
    for row in costs:
        if len(row) != m:
            raise ValueError("cost matrix must be square")
        for x in row:
            if isinstance(x, float) and not math.isfinite(x):
                raise ValueError("cost entries must be finite")
            x = to_fraction(x)
            if x < 0:
                raise ValueError("cost entries must be nonnegative")
            flat.append(x)
    den = common_denominator(flat)
    return m, den, [x.numerator * (den // x.denominator) for x in flat]


def _alternating_path(start, target, taken, c, m, u, v, owner, frozen):
    """Rows reachable from ``start`` by tight alternating edges, ending at column ``target``."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        base = x * m
        for y in range(m):
            if y == taken or c[base + y] - u[x] - v[y]:
                continue
            if y == target:
                path = [(x, y)]
                while parent[x] is not None:
                    x, y = parent[x]
                    path.append((x, y))
                return path
            o = owner[y]
            if o in parent or frozen[o]:
                continue
            parent[o] = (x, y)
            queue.append(o)
    return None


def lexicographic_matching(c, m, row_to_col, u, v, rows=None):
    """Lexicographically smallest optimal matching.

    Given one optimal matching and optimal potentials, every optimal matching
    uses only tight edges (zero reduced cost). Rows are settled in order,
    each taking the smallest tight column that still leaves a perfect tight
    matching for the unsettled rows. Only the first ``rows`` rows are
    canonicalised (all by default).
    """
    row_to_col = list(row_to_col)
    owner = [0] * m
    for i, j in enumerate(row_to_col):
        owner[j] = i
    frozen = [False] * m
    for i in range(m if rows is None else rows):
        cur = row_to_col[i]
        base = i * m
        frozen[i] = True
        for j in range(cur):
            if c[base + j] - u[i] - v[j]:
                continue
            r = owner[j]
            if frozen[r]:
                continue
            path = _alternating_path(r, cur, j, c, m, u, v, owner, frozen)
            if path is None:
                continue
            for x, y in path:
                row_to_col[x] = y
                owner[y] = x
            row_to_col[i] = j
            owner[j] = i
            break
    return row_to_col


def solve_matching(costs: Sequence[Sequence], canonical: bool = True) -> Matching:
    """Min-cost perfect matching with exact potentials (dual certificate)."""
    m, den, c = _scaled_matrix(costs)
    if m == 0:
        return Matching((), Fraction(0), (), ())
    row_to_col, u, v = kernels.hungarian(c, m)
    if canonical:
        row_to_col = lexicographic_matching(c, m, row_to_col, u, v)
    total = sum(c[i * m + j] for i, j in enumerate(row_to_col))
    return Matching(
        tuple(row_to_col),
        Fraction(total, den),
        tuple(Fraction(x, den) for x in u),
        tuple(Fraction(x, den) for x in v),
    )


def min_cost_perfect_matching(costs: Sequence[Sequence]) -> tuple[tuple, Fraction]:
    """Minimum-cost perfect matching of a square nonnegative matrix.

    Returns ``(assignment, total)`` with ``assignment[row] = column``
    (0-based). Among optimal matchings the lexicographically smallest
    assignment vector is returned.
    """
    result = solve_matching(costs)
    return result.assignment, result.cost


def slot_cost_matrix(centres, weights, slots) -> list[list[Fraction]]:
    """Square matrix: one row per interval, zero rows for the unused slots."""
    n, m = len(centres), len(slots)
    rows = [[w * abs(c - s) for s in slots] for c, w in zip(centres, weights)]
    rows.extend([Fraction(0)] * m for _ in range(m - n))
    return rows


def assign_int(icentres, iweights, islots, canonical=False):
    """Integer-scaled core of :func:`assign_slots`: ``(cost, slot per interval)``."""
    n, m = len(icentres), len(islots)
    flat = []
    for c, w in zip(icentres, iweights):
        flat.extend(w * abs(c - s) for s in islots)
    flat.extend([0] * (m * (m - n)))
    row_to_col, u, v = kernels.hungarian(flat, m)
    if canonical:
        row_to_col = lexicographic_matching(flat, m, row_to_col, u, v, rows=n)
    total = sum(flat[i * m + row_to_col[i]] for i in range(n))
    return total, row_to_col[:n]


def assign_slots(instance, slots, weights=None) -> Assignment:
    """Move each unit interval to its own slot at minimum total weighted distance.

    ``instance`` is a :class:`WeightedInstance` of unit intervals or a
    sequence of centres (with optional ``weights``). Ties are broken towards
    the lexicographically smallest slot vector.
    """
    if isinstance(instance, WeightedInstance):
        centres, w = list(instance.centres), list(instance.weights)
    else:
        centres = [to_fraction(c) for c in instance]
        w = [Fraction(1)] * len(centres) if weights is None else [to_fraction(x) for x in weights]
    if not isinstance(slots, SlotSet):
        slots = SlotSet(tuple(slots))
    pos = list(slots.positions)
    n, m = len(centres), len(pos)
    if m < n:
        raise InfeasibleError(f"{n} intervals but only {m} slots")
    if n == 0:
        return Assignment((), (), Fraction(0))
    dc = common_denominator(centres + pos)
    dw = common_denominator(w)
    ic = [x.numerator * (dc // x.denominator) for x in centres]
    isl = [x.numerator * (dc // x.denominator) for x in pos]
    iw = [x.numerator * (dw // x.denominator) for x in w]
    total, cols = assign_int(ic, iw, isl, canonical=True)
    d = tuple(pos[j] - c for j, c in zip(cols, centres))
    return Assignment(tuple(cols), d, Fraction(total, dc * dw))
