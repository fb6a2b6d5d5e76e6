"""Exhaustive reference solvers for tiny instances and the certificate check.

Both brute-force searches rely on one structural fact: some optimal solution
splits into contiguous chains (pitch exactly 1) that each contain an object
with zero displacement. Otherwise a chain could slide, at linear cost, until
it either meets a neighbour or one of its members reaches its original
position. So optimal positions lie on ``{c_i + z : z integer, |z| <= n}``;
the grid used here extends to ``|z| <= 2n``. The search then places objects
on grid points exhaustively with a DP over subsets, without assuming any
ordering of the objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ._exact import common_denominator, to_fraction
from .geometry import InfeasibleError, WeightedInstance

MAX_INTERVALS = 8
MAX_ARCS = 5


def _as_centres_weights(instance, weights):
    if isinstance(instance, WeightedInstance):
        if instance.kind not in ("unit_interval", "interval") or any(o.length != 1 for o in instance.objects):
            raise ValueError("brute force handles unit intervals only")
        return list(instance.centres), list(instance.weights)
    centres = [to_fraction(c) for c in instance]
    weights = [Fraction(1)] * len(centres) if weights is None else [to_fraction(w) for w in weights]
    return centres, weights


def _subset_dp(n, cand, cost, gap, window=None):
    """Place ``n`` items on sorted integer candidates ``cand`` at mutual gaps >= ``gap``.

    ``cost(i, q)`` is the (possibly ``None`` = forbidden) cost of item ``i``
    at candidate ``q``. Returns ``(total, placement)`` or ``(None, None)``.
    """
    P = len(cand)
    full = (1 << n) - 1
    # prev[q]: largest index p with cand[p] <= cand[q] - gap, or -1
    prev = []
    p = -1
    for q in range(P):
        while p + 1 < P and cand[p + 1] <= cand[q] - gap:
            p += 1
        prev.append(p)
    none = None
    f = {0: None}
    back = {}
    layer = {0}
    for _ in range(n):
        nxt_layer = set()
        for S in layer:
            row = f[S]
            # running prefix minimum over the previous placement
            if row is None:
                pref = None
            else:
                pref = [none] * P
                best = none
                arg = -1
                for q in range(P):
                    v = row[q]
                    if v is not None and (best is None or v < best):
                        best, arg = v, q
                    pref[q] = (best, arg)
            for i in range(n):
                if S >> i & 1:
                    continue
                T = S | (1 << i)
                trow = f.get(T)
                if trow is None:
                    trow = f[T] = [none] * P
                    nxt_layer.add(T)
                for q in range(P):
                    c = cost(i, q)
                    if c is None:
                        continue
                    if pref is None:
                        base, parent = 0, -1
                    else:
                        pq = prev[q]
                        if pq < 0 or pref[pq][0] is None:
                            continue
                        base, parent = pref[pq]
                    total = base + c
                    old = trow[q]
                    if old is None or total < old:
                        trow[q] = total
                        back[(T, q)] = (S, i, parent)
        layer = nxt_layer
    row = f.get(full)
    if row is None:
        return None, None
    best, arg = None, -1
    for q in range(P):
        if row[q] is not None and (best is None or row[q] < best):
            best, arg = row[q], q
    if best is None:
        return None, None
    placement = [None] * n
    T, q = full, arg
    while T:
        S, i, parent = back[(T, q)]
        placement[i] = q
        T, q = S, parent
    return best, placement


def brute_force_intervals(instance, weights=None, resolution=None, fixed=None):
    """Certified optimum of weighted unit-interval dispersal for ``n <= 8``.

    ``instance`` is a :class:`WeightedInstance` or a sequence of centres (then
    ``weights`` defaults to all ones). ``resolution`` adds the multiples of
    that step inside the search window as further candidates. ``fixed`` forces
    the interval with that index to stay put.

    Returns ``(dispersal, cost)`` with exact rationals.
    """
    centres, w = _as_centres_weights(instance, weights)
    n = len(centres)
    if n > MAX_INTERVALS:
        raise ValueError(f"brute force is limited to {MAX_INTERVALS} intervals")
    if n == 0:
        return (), Fraction(0)
    reach = 2 * n
    points = {c + z for c in centres for z in range(-reach, reach + 1)}
    if resolution is not None:
        step = to_fraction(resolution)
        if step <= 0:
            raise ValueError("resolution must be positive")
        lo, hi = min(centres) - reach, max(centres) + reach
        k = -((-lo) // step)
        while k * step <= hi:
            points.add(k * step)
            k += 1
    cand = sorted(points)
    den = common_denominator(cand + w)
    ic = [x.numerator * (den // x.denominator) for x in cand]
    icen = [x.numerator * (den // x.denominator) for x in centres]
    iw = [x.numerator * (den // x.denominator) for x in w]
    home = {i: ic.index(icen[i]) for i in range(n)}

    def cost(i, q):
        if fixed is not None and i == fixed and q != home[i]:
            return None
        return iw[i] * abs(ic[q] - icen[i])

    total, placement = _subset_dp(n, ic, cost, den)
    d = tuple(cand[placement[i]] - centres[i] for i in range(n))
    return d, Fraction(total, den * den)


def brute_force_unit_blocks(centres: Sequence) -> Fraction:
    """Optimal unweighted cost by enumerating block partitions of the sorted centres.

    Each block is packed at pitch 1 with one member left in place; every
    composition of the sorted sequence and every choice of anchors is tried.
    A second, ordering-based route used to cross-check the subset DP.
    """
    c = sorted(to_fraction(x) for x in centres)
    n = len(c)
    if n > MAX_INTERVALS:
        raise ValueError(f"brute force is limited to {MAX_INTERVALS} intervals")
    best = None
    for cuts in product((False, True), repeat=max(n - 1, 0)):
        bounds, start = [], 0
        for i, cut in enumerate(cuts):
            if cut:
                bounds.append((start, i))
                start = i + 1
        bounds.append((start, n - 1))
        for anchors in product(*[range(a, b + 1) for a, b in bounds]):
            pos = []
            for (a, b), j in zip(bounds, anchors):
                first = c[j] - (j - a)
                pos.extend(first + t for t in range(b - a + 1))
            if all(pos[i + 1] - pos[i] >= 1 for i in range(n - 1)):
                total = sum((abs(p - x) for p, x in zip(pos, c)), Fraction(0))
                if best is None or total < best:
                    best = total
    return best if best is not None else Fraction(0)


def _circ(a, b, lap):
    d = (a - b) % lap
    return min(d, lap - d)


def brute_force_arcs(instance) -> tuple[tuple, Fraction]:
    """Certified optimum for ``n <= 5`` unit arcs.

    One arc is kept in place (some optimum has a motionless arc); the others
    are placed on lifts of the grid ``{s_j + z mod |C|}`` inside the window
    between that arc and its copy one turn later.
    """
    from .arcs import ArcInstance

    if isinstance(instance, WeightedInstance):
        instance = ArcInstance.from_instance(instance)
    instance.check_normalised()
    starts, lap = list(instance.starts), instance.circumference
    n = len(starts)
    if n > MAX_ARCS:
        raise ValueError(f"brute force is limited to {MAX_ARCS} arcs")
    if n <= 1:
        return (Fraction(0),) * n, Fraction(0)
    grid = {(s + z) % lap for s in starts for z in range(-2 * n, 2 * n + 1)}
    best = None
    for f in range(n):
        base = starts[f]
        others = [j for j in range(n) if j != f]
        lifts = sorted({base + ((g - base) % lap) for g in grid})
        lifts = [x for x in lifts if base + 1 <= x <= base + lap - 1]
        if not lifts:
            continue
        den = common_denominator(lifts + starts + [lap])
        il = [x.numerator * (den // x.denominator) for x in lifts]

        def cost(i, q, others=others, lifts=lifts):
            return _circ(lifts[q], starts[others[i]], lap)

        total, placement = _subset_dp(n - 1, il, cost, den)
        if total is None:
            continue
        if best is None or total < best[0]:
            d = [Fraction(0)] * n
            for i, j in enumerate(others):
                x = (lifts[placement[i]] - starts[j]) % lap
                d[j] = x - lap if x > lap / 2 else x
            best = (total, tuple(d))
    if best is None:
        raise InfeasibleError("no feasible placement found")
    return best[1], best[0]


@dataclass(frozen=True)
class Certificate:
    """Witness that a weighted unit-interval instance can be dispersed within ``threshold``.

    ``assignment[i]`` is the 1-based index of the slot taken by interval ``i``.
    """

    centres: tuple
    weights: tuple
    threshold: Fraction
    slots: tuple
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "centres", tuple(to_fraction(c) for c in self.centres))
        object.__setattr__(self, "weights", tuple(to_fraction(w) for w in self.weights))
        object.__setattr__(self, "threshold", to_fraction(self.threshold))
        object.__setattr__(self, "slots", tuple(to_fraction(s) for s in self.slots))
        object.__setattr__(self, "assignment", tuple(int(x) for x in self.assignment))
        n, m = len(self.centres), len(self.slots)
        if len(self.weights) != n:
            raise ValueError("one weight per interval required")
        if len(self.assignment) != n:
            raise ValueError(f"assignment has {len(self.assignment)} entries for {n} intervals")
        if len(set(self.assignment)) != n:
            raise ValueError("assignment uses a slot twice")
        if any(not 1 <= x <= m for x in self.assignment):
            raise ValueError(f"assignment entries must lie in 1..{m}")

    def cost(self) -> Fraction:
        return sum(
            (w * abs(c - self.slots[x - 1]) for c, w, x in zip(self.centres, self.weights, self.assignment)),
            Fraction(0),
        )


def verify_certificate(cert: Certificate) -> bool:
    """Accept iff the assigned slots are pairwise >= 1 apart and the cost is <= threshold."""
    used = [cert.slots[x - 1] for x in cert.assignment]
    for i in range(len(used)):
        for j in range(i + 1, len(used)):
            if abs(used[i] - used[j]) < 1:
                return False
    return cert.cost() <= cert.threshold


def certificate_from_dispersal(centres, weights, dispersal, threshold=None) -> Certificate:
    """Certificate whose slots are the dispersed centres (threshold defaults to the cost)."""
    centres = [to_fraction(c) for c in centres]
    positions = [c + to_fraction(d) for c, d in zip(centres, dispersal)]
    slots = sorted(set(positions))
    index = {s: k + 1 for k, s in enumerate(slots)}
    weights = [to_fraction(w) for w in weights]
    if threshold is None:
        threshold = sum((w * abs(to_fraction(d)) for w, d in zip(weights, dispersal)), Fraction(0))
    return Certificate(tuple(centres), tuple(weights), threshold, tuple(slots), tuple(index[p] for p in positions))
