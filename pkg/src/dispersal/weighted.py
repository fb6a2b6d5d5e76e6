"""Exact edgeless dispersal of weighted unit intervals.

Two solvers share the slot-assignment engine. For a clique every optimum
leaves some interval in place and packs the others contiguously around it,
so trying each interval as the anchor costs one matching per anchor. For
general instances with ``k`` maximal cliques, an optimum leaves at most one
interval per clique in place; enumerating those fixed intervals, and how the
free space between consecutive ones is shared, yields candidate slot sets
that always contain an optimal placement.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterator, NamedTuple, Sequence

from ._exact import common_denominator, to_fraction
from .assignment import SlotSet, assign_int
from .geometry import WeightedInstance


def _centres_weights(instance, weights=None):
    if isinstance(instance, WeightedInstance):
        if instance.kind not in ("unit_interval", "interval") or any(o.length != 1 for o in instance.objects):
            raise ValueError("weighted dispersal handles unit intervals only")
        return list(instance.centres), list(instance.weights)
    centres = [to_fraction(c) for c in instance]
    if weights is None:
        w = [Fraction(1)] * len(centres)
    else:
        w = [to_fraction(x) for x in weights]
        if len(w) != len(centres):
            raise ValueError("one weight per interval required")
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    return centres, w


class _Scaled:
    """Centres and weights as integers (slots differ from centres by integers)."""

    def __init__(self, centres, weights):
        self.centres, self.weights = centres, weights
        self.dc = common_denominator(centres)
        self.dw = common_denominator(weights)
        self.c = [x.numerator * (self.dc // x.denominator) for x in centres]
        self.w = [x.numerator * (self.dw // x.denominator) for x in weights]

    def cost(self, total: int) -> Fraction:
        return Fraction(total, self.dc * self.dw)

    def dispersal(self, movers, cols, slots, fixed=()):
        d = [Fraction(0)] * len(self.c)
        for i, j in zip(movers, cols):
            d[i] = Fraction(slots[j] - self.c[i], self.dc)
        return tuple(d)


class CliqueSolution(NamedTuple):
    dispersal: tuple
    cost: Fraction
    anchor: int


def solve_clique(instance, weights=None) -> CliqueSolution:
    """Optimal dispersal of a clique, with the anchor that stays in place."""
    centres, w = _centres_weights(instance, weights)
    n = len(centres)
    if n == 0:
        return CliqueSolution((), Fraction(0), -1)
    if max(centres) - min(centres) >= 1:
        raise ValueError("intervals do not form a clique")
    sc = _Scaled(centres, w)
    best = None
    for a in range(n):
        movers = [i for i in range(n) if i != a]
        slots = [sc.c[a] + sc.dc * j for j in range(-(n - 1), n) if j]
        total, cols = assign_int([sc.c[i] for i in movers], [sc.w[i] for i in movers], slots)
        if best is None or total < best[0]:
            best = (total, a, movers, slots)
    total, a, movers, slots = best
    _, cols = assign_int([sc.c[i] for i in movers], [sc.w[i] for i in movers], slots, canonical=True)
    return CliqueSolution(sc.dispersal(movers, cols, slots), sc.cost(total), a)


def disperse_clique(instance, weights=None) -> tuple[Fraction, ...]:
    """Optimal edgeless dispersal of weighted unit intervals that pairwise overlap.

    Every interval is tried as the one left in place; the rest are matched to
    the slots at integer distances ``1..n-1`` on either side of it.
    """
    return solve_clique(instance, weights).dispersal


@dataclass(frozen=True)
class CliqueDecomposition:
    """Maximal cliques as inclusive index windows ``(lo, hi)`` over ``order``.

    ``order`` lists the interval indices sorted by centre.
    """

    order: tuple
    windows: tuple

    @property
    def k(self) -> int:
        return len(self.windows)

    def members(self, q: int) -> tuple:
        lo, hi = self.windows[q]
        return self.order[lo:hi + 1]

    def __iter__(self):
        return (self.members(q) for q in range(self.k))


def maximal_cliques(instance, weights=None) -> CliqueDecomposition:
    """Maximal windows of centre-sorted unit intervals spanning less than 1."""
    centres, _ = _centres_weights(instance, weights)
    order = sorted(range(len(centres)), key=lambda i: centres[i])
    srt = [centres[i] for i in order]
    windows = []
    hi = 0
    for lo in range(len(srt)):
        hi = max(hi, lo)
        while hi + 1 < len(srt) and srt[hi + 1] - srt[lo] < 1:
            hi += 1
        # window is maximal unless the previous one already reached hi
        if not windows or windows[-1][1] < hi:
            windows.append((lo, hi))
    return CliqueDecomposition(tuple(order), tuple(windows))


@dataclass(frozen=True)
class GapCase:
    """How the free space between fixed intervals ``left`` and ``right`` is used.

    ``case`` is ``"i"`` (no room), ``"ii"`` (``split`` slots next to
    ``left``, the remaining ``floor(gap) - split`` next to ``right``) or
    ``"iii"`` (room for every movable interval on both sides).
    """

    left: int
    right: int
    gap: Fraction
    case: str
    split: int | None = None

    def slots(self, centres, movable: int) -> list[Fraction]:
        a, b = centres[self.left], centres[self.right]
        if self.case == "i":
            return []
        if self.case == "ii":
            room = int(self.gap)
            return [a + j for j in range(1, self.split + 1)] + [b - j for j in range(room - self.split, 0, -1)]
        return [a + j for j in range(1, movable + 1)] + [b - j for j in range(movable, 0, -1)]


def gap_cases(centres, left: int, right: int, movable: int) -> list[GapCase]:
    """Alternatives for one gap between consecutive fixed intervals."""
    g = to_fraction(centres[right]) - to_fraction(centres[left]) - 1
    if g < 0:
        raise ValueError(f"fixed intervals {left} and {right} overlap")
    if g < 1:
        return [GapCase(left, right, g, "i")]
    if g < 2 * movable:
        return [GapCase(left, right, g, "ii", r) for r in range(int(g) + 1)]
    return [GapCase(left, right, g, "iii")]


def _check_fixed(centres, fixed):
    fixed = sorted(fixed, key=lambda i: centres[i])
    for a, b in zip(fixed, fixed[1:]):
        if centres[b] - centres[a] < 1:
            raise ValueError(f"fixed intervals {a} and {b} overlap")
    return fixed


def _outer(centres, fixed, movable):
    lo, hi = centres[fixed[0]], centres[fixed[-1]]
    return [lo - j for j in range(movable, 0, -1)], [hi + j for j in range(1, movable + 1)]


def enumerate_gap_cases(instance, fixed: Sequence[int], weights=None) -> Iterator[tuple]:
    """Every combination of gap cases for the given fixed intervals, in lexicographic order."""
    centres, _ = _centres_weights(instance, weights)
    fixed = _check_fixed(centres, fixed)
    movable = len(centres) - len(fixed)
    per_gap = [gap_cases(centres, a, b, movable) for a, b in zip(fixed, fixed[1:])]
    return product(*per_gap)


def enumerate_slot_sets(instance, fixed: Sequence[int], weights=None) -> Iterator[SlotSet]:
    """Candidate slot sets for one choice of fixed intervals.

    Each set holds the fixed centres, ``n - i`` slots packed outside the
    extreme fixed intervals, and the gap slots of one case combination.
    """
    centres, _ = _centres_weights(instance, weights)
    fixed = _check_fixed(centres, fixed)
    if not fixed:
        raise ValueError("at least one fixed interval is required")
    movable = len(centres) - len(fixed)
    left, right = _outer(centres, fixed, movable)
    for cases in enumerate_gap_cases(centres, fixed):
        pos = list(left)
        for f, gc in zip(fixed, cases):
            pos.append(centres[f])
            pos.extend(gc.slots(centres, movable))
        pos.append(centres[fixed[-1]])
        pos.extend(right)
        yield SlotSet(tuple(pos))


def xp_invocation_bound(n: int, k: int) -> Fraction:
    """``sum_i C(k,i) (n/k)^i (2(n-i)+1)^i``: worst-case number of assignments."""
    if k == 0:
        return Fraction(0)
    return sum((comb(k, i) * Fraction(n, k) ** i * (2 * (n - i) + 1) ** i for i in range(1, k + 1)), Fraction(0))


class XPSolution(NamedTuple):
    dispersal: tuple
    cost: Fraction
    fixed: tuple
    cases: tuple
    invocations: int
    k: int


def _fixed_sets(centres, cliques):
    """Independent fixed sets, one interval from each of ``i`` cliques, ``i = 1..k``."""
    seen = set()
    for i in range(1, cliques.k + 1):
        for chosen in combinations(range(cliques.k), i):
            for pick in product(*(cliques.members(q) for q in chosen)):
                fs = tuple(sorted(pick, key=lambda x: (centres[x], x)))
                if len(set(fs)) < i or fs in seen:
                    continue
                if any(centres[b] - centres[a] < 1 for a, b in zip(fs, fs[1:])):
                    continue
                seen.add(fs)
                yield fs


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DISPERSAL_THREADS", "1")))
    except ValueError:
        return 1


def solve_xp(instance, weights=None, workers: int | None = None) -> XPSolution:
    """Optimal weighted dispersal by enumerating fixed intervals and gap cases.

    Candidates are ranked by ``(cost, fixed set, case descriptor)`` so the
    result does not depend on ``workers``.
    """
    centres, w = _centres_weights(instance, weights)
    n = len(centres)
    if n == 0:
        return XPSolution((), Fraction(0), (), (), 0, 0)
    cliques = maximal_cliques(centres)
    k = cliques.k
    sc = _Scaled(centres, w)
    unit = sc.dc

    jobs = []
    for fs in _fixed_sets(centres, cliques):
        assert len(fs) <= k
        movers = [i for i in range(n) if i not in fs]
        movable = len(movers)
        lo, hi = sc.c[fs[0]], sc.c[fs[-1]]
        outer_left = [lo - unit * j for j in range(movable, 0, -1)]
        outer_right = [hi + unit * j for j in range(1, movable + 1)]
        per_gap = [gap_cases(centres, a, b, movable) for a, b in zip(fs, fs[1:])]
        for cases in product(*per_gap):
            slots = list(outer_left)
            for gc in cases:
                a, b = sc.c[gc.left], sc.c[gc.right]
                if gc.case == "ii":
                    room = int(gc.gap)
                    slots.extend(a + unit * j for j in range(1, gc.split + 1))
                    slots.extend(b - unit * j for j in range(room - gc.split, 0, -1))
                elif gc.case == "iii":
                    slots.extend(a + unit * j for j in range(1, movable + 1))
                    slots.extend(b - unit * j for j in range(movable, 0, -1))
            slots.extend(outer_right)
            descriptor = tuple((gc.case, -1 if gc.split is None else gc.split) for gc in cases)
            jobs.append((fs, descriptor, movers, slots))

    def run(job):
        fs, descriptor, movers, slots = job
        if not movers:
            return 0
        total, _ = assign_int([sc.c[i] for i in movers], [sc.w[i] for i in movers], slots)
        return total

    workers = _threads() if workers is None else max(1, workers)
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(workers) as pool:
            totals = list(pool.map(run, jobs))
    else:
        totals = [run(job) for job in jobs]

    bound = xp_invocation_bound(n, k)
    if len(jobs) > bound:
        raise AssertionError(f"{len(jobs)} assignments exceed the bound {bound}")

    best = min(range(len(jobs)), key=lambda t: (totals[t], jobs[t][0], jobs[t][1]))
    fs, descriptor, movers, slots = jobs[best]
    if movers:
        _, cols = assign_int([sc.c[i] for i in movers], [sc.w[i] for i in movers], slots, canonical=True)
    else:
        cols = []
    dispersal = anchor_runs(centres, w, sc.dispersal(movers, cols, slots))
    return XPSolution(dispersal, sc.cost(totals[best]), fs, descriptor, len(jobs), k)


def anchor_runs(centres, weights, dispersal) -> tuple:
    """Slide touching runs of an optimal dispersal until each holds an unmoved interval.

    A run with no unmoved member has zero cost slope, so it can move left at
    no cost until a member reaches its centre or the run meets its neighbour.
    """
    pos = [c + d for c, d in zip(centres, dispersal)]
    order = sorted(range(len(pos)), key=pos.__getitem__)
    while True:
        runs = [[order[0]]] if order else []
        for a, b in zip(order, order[1:]):
            if pos[b] - pos[a] == 1:
                runs[-1].append(b)
            else:
                runs.append([b])
        for r, run in enumerate(runs):
            if all(pos[i] != centres[i] for i in run):
                break
        else:
            return tuple(p - c for p, c in zip(pos, centres))
        slope = sum(weights[i] if pos[i] > centres[i] else -weights[i] for i in run)
        if slope != 0:
            raise AssertionError("dispersal is not optimal")
        step = min(pos[i] - centres[i] for i in run if pos[i] > centres[i])
        if r > 0:
            step = min(step, pos[run[0]] - pos[runs[r - 1][-1]] - 1)
        for i in run:
            pos[i] -= step


def disperse_xp(instance, weights=None, workers: int | None = None) -> tuple[Fraction, ...]:
    """Optimal edgeless dispersal of weighted unit intervals.

    Runs in ``(1 + n/k)^k`` times polynomial time for ``k`` maximal cliques.
    ``workers`` (default: the ``DISPERSAL_THREADS`` environment variable)
    spreads the independent assignments over threads.
    """
    return solve_xp(instance, weights, workers).dispersal
