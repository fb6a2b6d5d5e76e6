"""Instances of the 3-Partition reductions for intervals, squares and disks.

Element objects start stacked at the origin, overlapping the leftmost
barrier. Barriers are dense lattices of tiny cells that are too expensive to
push, delimiting free spaces that hold exactly three elements of a triple
summing to ``L``. Barrier lattices are generated lazily since a single 2-D
wall holds millions of cells at full resolution.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from ._exact import to_fraction
from .geometry import Ball, Box, Interval, WeightedInstance

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ThreePartitionInstance:
    """``3m`` positive integers with ``L/4 < a < L/2`` summing to ``m*L``."""

    values: tuple
    bound: int

    def __post_init__(self):
        vals = tuple(int(a) for a in self.values)
        L = int(self.bound)
        if any(isinstance(a, bool) or to_fraction(a) != b for a, b in zip(self.values, vals)):
            raise ValueError("3-Partition values must be integers")
        if not vals or len(vals) % 3:
            raise ValueError(f"need a positive multiple of 3 values, got {len(vals)}")
        for a in vals:
            if not 4 * a > L or not 2 * a < L:
                raise ValueError(f"value {a} outside ({L}/4, {L}/2)")
        if sum(vals) != len(vals) // 3 * L:
            raise ValueError(f"values sum to {sum(vals)}, expected {len(vals) // 3 * L}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "bound", L)

    @property
    def m(self) -> int:
        return len(self.values) // 3

    @classmethod
    def random_yes(cls, m: int, bound: int, seed=None) -> "ThreePartitionInstance":
        """A yes-instance built from ``m`` random valid triples (values shuffled)."""
        rng = random.Random(seed)
        triples = valid_triples(bound)
        if not triples:
            raise ValueError(f"no valid triple sums to {bound}")
        vals = [a for _ in range(m) for a in rng.choice(triples)]
        rng.shuffle(vals)
        return cls(tuple(vals), bound)

    def find_partition(self) -> list[tuple] | None:
        """Some partition into triples summing to ``L`` (backtracking), or None."""
        rest = sorted(self.values, reverse=True)

        def search(rest):
            if not rest:
                return []
            first, others = rest[0], rest[1:]
            tried = set()
            for i, j in combinations(range(len(others)), 2):
                pair = (others[i], others[j])
                if pair in tried or first + sum(pair) != self.bound:
                    continue
                tried.add(pair)
                left = [x for t, x in enumerate(others) if t not in (i, j)]
                sub = search(left)
                if sub is not None:
                    return [(first,) + pair] + sub
            return None

        return search(rest)


def valid_triples(bound: int) -> list[tuple]:
    """Nondecreasing integer triples in ``(L/4, L/2)`` that sum to ``L``."""
    lo, hi = bound // 4 + 1, (bound - 1) // 2
    out = []
    for a in range(lo, hi + 1):
        for b in range(a, hi + 1):
            c = bound - a - b
            if b <= c <= hi:
                out.append((a, b, c))
    return out


def valid_multisets(m: int, bound: int) -> list[tuple]:
    """Every element multiset (sorted) of a yes-instance with ``m`` triples."""
    from itertools import combinations_with_replacement

    return sorted({tuple(sorted(sum(t, ()))) for t in combinations_with_replacement(valid_triples(bound), m)})


def threshold_T(m: int, L: int) -> Fraction:
    """``3m(mL + m + L - 1)/2``: packing cost bound for the interval reduction."""
    if m < 1 or L < 1:
        raise ValueError("m and L must be positive")
    return Fraction(3 * m * (m * L + m + L - 1), 2)


def threshold_2d(m: int, L: int, delta: int) -> Fraction:
    """``(3m/2)(m(L+1) + L - 1) + (9 delta/2) m(m-1)`` for squares and disks."""
    if m < 1 or L < 1 or delta < 1:
        raise ValueError("m, L and delta must be positive")
    return Fraction(3 * m * (m * (L + 1) + L - 1), 2) + Fraction(9 * delta * m * (m - 1), 2)


@dataclass(frozen=True)
class CellGrid:
    """Lattice of ``rows x cols`` cells of side ``cell``; top-left corner at ``(x0, top)``.

    Cell ``(a, b)`` (1-based row from the top, column from the left) is
    centred at ``(x0 + (2b-1) cell/2, top - (2a-1) cell/2)``. One-dimensional
    grids have ``top = None`` and a single row.
    """

    block: str
    x0: Fraction
    top: Fraction | None
    cols: int
    rows: int
    cell: Fraction
    shape: str  # interval | square | disk
    copy: int = 0

    def __len__(self):
        return self.rows * self.cols

    @property
    def rect(self) -> tuple:
        x1 = self.x0 + self.cols * self.cell
        if self.top is None:
            return (self.x0, x1)
        return (self.x0, self.top - self.rows * self.cell, x1, self.top)

    def centre(self, a: int, b: int):
        x = self.x0 + (2 * b - 1) * self.cell / 2
        if self.top is None:
            return x
        return (x, self.top - (2 * a - 1) * self.cell / 2)

    def object(self, a: int, b: int):
        c = self.centre(a, b)
        if self.shape == "interval":
            return Interval(c, self.cell)
        if self.shape == "square":
            return Box(c, self.cell)
        return Ball(c, self.cell / 2)

    def provenance(self, a: int, b: int) -> dict:
        cell = [b] if self.top is None else [a, b]
        out = {"role": "barrier", "block": self.block, "cell": cell}
        if self.copy:
            out["copy"] = self.copy
        return out

    def __iter__(self):
        for a in range(1, self.rows + 1):
            for b in range(1, self.cols + 1):
                yield self.object(a, b), self.provenance(a, b)


class Packing(NamedTuple):
    dispersal: tuple | None
    cost: Fraction | None
    valid: bool
    below_threshold: bool
    reason: str


@dataclass
class HardInstance:
    """A generated reduction instance.

    Object order: elements (index ``i`` for value ``a_i``), then every
    barrier grid cell by cell, then extra objects.
    """

    problem: ThreePartitionInstance
    shape: str  # interval | square | disk
    threshold: Fraction
    elements: tuple
    grids: tuple
    extras: tuple = ()  # (object, provenance)
    delta: int | None = None
    k: int | None = None
    scale: Fraction = Fraction(1)
    resolution: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return 1 if self.shape == "interval" else 2

    def __len__(self):
        return len(self.elements) + sum(len(g) for g in self.grids) + len(self.extras)

    def iter_objects(self) -> Iterator[tuple]:
        for i, obj in enumerate(self.elements):
            yield obj, {"role": "element", "index": i + 1, "value": self.problem.values[i]}
        for g in self.grids:
            yield from g
        yield from self.extras

    def objects(self) -> list:
        return [o for o, _ in self.iter_objects()]

    def provenance(self) -> list[dict]:
        return [p for _, p in self.iter_objects()]

    def to_instance(self) -> WeightedInstance:
        kind = {"interval": "interval", "square": "box2d", "disk": "ball2d"}[self.shape]
        return WeightedInstance(tuple(self.objects()), kind=kind)

    def free_spaces(self) -> list[tuple]:
        """Free spaces between consecutive barriers (x-ranges, or rectangles in 2-D)."""
        main = sorted((g for g in self.grids if g.block.isdigit() and g.copy == 0), key=lambda g: int(g.block))
        out = []
        for left, right in zip(main, main[1:]):
            lr, rr = left.rect, right.rect
            if self.dimension == 1:
                out.append((lr[1], rr[0]))
            else:
                out.append((lr[2], lr[1], rr[0], lr[3]))
        return out


def _element_lengths(tp, scale):
    return [a * scale for a in tp.values]


def gen_interval_instance(
    tp: ThreePartitionInstance, k: int | None = None, integer_scale: bool = False
) -> HardInstance:
    """Interval reduction: edgeless variant, or the no-``k``-clique variant when ``k`` is given.

    The clique variant holds ``k - 1`` copies of every barrier and ``k - 2``
    intervals spanning each free space. ``integer_scale`` multiplies every
    coordinate and the threshold by ``T`` so all values are integers.
    """
    if k is not None and k < 3:
        raise ValueError("the clique variant needs k >= 3")
    m, L = tp.m, tp.bound
    T = threshold_T(m, L)
    t = int(T)
    s = T if integer_scale else Fraction(1)
    cell = s / T
    elements = tuple(Interval(-a * s / 2, a * s) for a in tp.values)
    copies = 1 if k is None else k - 1
    grids = []
    for c in range(copies):
        grids.append(CellGrid("0", -(T + L) * s, None, t * (t + L), 1, cell, "interval", c))
        for i in range(1, m):
            grids.append(CellGrid(str(i), (i * L + i - 1) * s, None, t, 1, cell, "interval", c))
        grids.append(CellGrid(str(m), (m * L + m - 1) * s, None, t * (t + L), 1, cell, "interval", c))
    extras = []
    if k is not None:
        for i in range(m):
            lo = (i * (L + 1)) * s
            for c in range(k - 2):
                extras.append((Interval(lo + L * s / 2, L * s), {"role": "spanner", "space": i + 1, "copy": c}))
    return HardInstance(
        tp, "interval", T * s, elements, tuple(grids), tuple(extras), k=k, scale=s,
        params={"m": m, "L": L, "T": T, "integer_scale": integer_scale},
    )


def interval_object_count(m: int, L: int, k: int | None = None) -> int:
    """Closed-form object count of :func:`gen_interval_instance`."""
    t = int(threshold_T(m, L))
    barriers = 2 * t * (t + L) + (m - 1) * t
    if k is None:
        return 3 * m + barriers
    return 3 * m + (k - 1) * barriers + (k - 2) * m


def gen_2d_instance(
    tp: ThreePartitionInstance,
    shape: str = "square",
    delta: int | None = None,
    resolution: int | None = None,
    fillers: bool = False,
) -> HardInstance:
    """Square or disk reduction.

    Elements have side (diameter) ``delta + a`` and centre ``(-a/2, 0)``.
    Free spaces measure ``L + 3 delta`` by ``L + delta``; column barriers
    separate them and walls close them off above and below. Barrier cells
    have side ``1/resolution`` (default ``1/T``, the full construction);
    ``resolution=1`` gives a coarse lattice with the same outline.
    ``fillers`` adds strips of height ``L/4`` along the top and bottom of
    each free space.
    """
    if shape not in ("square", "disk"):
        raise ValueError(f"unknown shape {shape!r}")
    m, L = tp.m, tp.bound
    if delta is None:
        delta = 4 * L
    if isinstance(delta, bool) or int(delta) != delta or delta < 1:
        raise ValueError("delta must be a positive integer")
    delta = int(delta)
    T = threshold_2d(m, L, delta)
    t = int(T)
    res = t if resolution is None else int(resolution)
    if res < 1:
        raise ValueError("resolution must be positive")
    cell = Fraction(1, res)
    pitch = L + 3 * delta + 1
    half_h = Fraction(L + delta, 2)

    if shape == "square":
        elements = tuple(Box((Fraction(-a, 2), Fraction(0)), delta + a) for a in tp.values)
    else:
        elements = tuple(Ball((Fraction(-a, 2), Fraction(0)), Fraction(delta + a, 2)) for a in tp.values)

    rows = (L + delta) * res
    grids = [CellGrid("0", Fraction(-(t + L)), half_h, (t + L) * res, rows, cell, shape)]
    for i in range(1, m):
        grids.append(CellGrid(str(i), Fraction(i * pitch - 1), half_h, res, rows, cell, shape))
    grids.append(CellGrid(str(m), Fraction(m * pitch - 1), half_h, (t + L) * res, rows, cell, shape))
    width = m * pitch - 1 + 2 * (t + L)
    wall_rows = math.ceil((T + half_h) * res)
    x_left = Fraction(-(t + L))
    grids.append(CellGrid("up", x_left, half_h + wall_rows * cell, width * res, wall_rows, cell, shape))
    grids.append(CellGrid("down", x_left, -half_h, width * res, wall_rows, cell, shape))
    if fillers:
        strip = (L * res) // 4
        for i in range(1, m + 1):
            x0 = Fraction((i - 1) * pitch)
            cols = (L + 3 * delta) * res
            grids.append(CellGrid(f"fill{i}up", x0, half_h, cols, strip, cell, shape))
            grids.append(CellGrid(f"fill{i}down", x0, -half_h + strip * cell, cols, strip, cell, shape))
    return HardInstance(
        tp, shape, T, elements, tuple(grids), delta=delta, resolution=res,
        params={"m": m, "L": L, "T": T, "delta": delta, "resolution": res, "fillers": fillers},
    )


def barriers_disjoint(inst: HardInstance) -> bool:
    """Cells never overlap: every lattice tiles its rectangle and rectangles are interior-disjoint.

    Copies of the same lattice (clique variant) are exempt from the second test.
    """
    rects = []
    for g in inst.grids:
        if g.cols < 1 or g.rows < 1 or g.cell <= 0:
            return False
        if g.copy == 0:
            rects.append(g.rect)
    for r1, r2 in combinations(rects, 2):
        if len(r1) == 2:
            if r1[0] < r2[1] and r2[0] < r1[1]:
                return False
        elif r1[0] < r2[2] and r2[0] < r1[2] and r1[1] < r2[3] and r2[1] < r1[3]:
            return False
    return True


def _assign_triples(tp, partition):
    remaining = list(enumerate(tp.values))
    rows = []
    for triple in partition:
        idx = []
        for a in triple:
            for pos, (i, v) in enumerate(remaining):
                if v == a:
                    idx.append(i)
                    del remaining[pos]
                    break
            else:
                return None
        rows.append(idx)
    return rows if not remaining else None


def check_yes_packing(inst: HardInstance, partition: Sequence[Sequence[int]]) -> Packing:
    """Canonical packing of a claimed 3-partition into the free spaces.

    The ``j``-th element of triple ``i`` moves right until it abuts the
    previous one (or the barrier). Malformed partitions are reported through
    ``valid`` rather than raised. 2-D packings move elements horizontally and
    keep them vertically centred.
    """
    tp = inst.problem
    partition = [tuple(int(a) for a in t) for t in partition]
    if len(partition) != tp.m or any(len(t) != 3 for t in partition):
        return Packing(None, None, False, False, f"expected {tp.m} triples")
    rows = _assign_triples(tp, partition)
    if rows is None:
        return Packing(None, None, False, False, "triples are not a permutation of the values")
    bad = [t for t in partition if sum(t) != tp.bound]
    reason = f"triples {bad} do not sum to {tp.bound}" if bad else ""
    L, s = tp.bound, inst.scale
    d = [Fraction(0)] * len(inst)
    for i, idx in enumerate(rows):
        if inst.dimension == 1:
            run = (L + 1) * i
            for j in idx:
                run += tp.values[j]
                d[j] = run * s
        else:
            delta = inst.delta
            run = Fraction((L + 3 * delta + 1) * i)
            for j in idx:
                size = delta + tp.values[j]
                run += size
                d[j] = (run - Fraction(delta, 2), Fraction(0))  # right edge from delta/2 to run
    if inst.dimension == 1:
        cost = sum((abs(x) for x in d), Fraction(0))
    else:
        cost = sum((abs(x[0]) + abs(x[1]) for x in d if isinstance(x, tuple)), Fraction(0))
        d = [x if isinstance(x, tuple) else (Fraction(0), Fraction(0)) for x in d]
    return Packing(tuple(d), cost, not bad, cost < inst.threshold, reason)
