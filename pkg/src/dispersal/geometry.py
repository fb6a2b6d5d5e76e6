"""Objects, dispersals, intersection graphs and graph-class predicates.

All objects are open sets: two intervals that only share an endpoint are not
adjacent. Coordinates are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ._exact import common_denominator, to_fraction

ONE = Fraction(1)

KINDS = ("unit_interval", "interval", "unit_arc", "box2d", "ball2d")
GRAPH_CLASSES = ("edgeless", "acyclic", "no_k_clique", "has_k_clique")


class DimensionError(ValueError):
    """A dispersal or weight vector does not match the instance size."""


class InfeasibleError(ValueError):
    """No dispersal can make the instance edgeless (or too few slots)."""


@dataclass(frozen=True)
class Interval:
    centre: Fraction
    length: Fraction = ONE

    def __post_init__(self):
        object.__setattr__(self, "centre", to_fraction(self.centre))
        object.__setattr__(self, "length", to_fraction(self.length))
        if self.length <= 0:
            raise ValueError(f"interval length must be positive, got {self.length}")

    @property
    def left(self) -> Fraction:
        return self.centre - self.length / 2

    @property
    def right(self) -> Fraction:
        return self.centre + self.length / 2

    def shifted(self, d) -> "Interval":
        return Interval(self.centre + to_fraction(d), self.length)


@dataclass(frozen=True)
class Arc:
    """Arc on a circle, stored as start position and length in arc-length units.

    ``start`` lies in ``[0, circumference)``; the arc runs counterclockwise to
    ``start + length``. :attr:`angle` gives the start in radians.
    """

    start: Fraction
    circumference: Fraction
    length: Fraction = ONE

    def __post_init__(self):
        c = to_fraction(self.circumference)
        if c <= 0:
            raise ValueError("circumference must be positive")
        length = to_fraction(self.length)
        if not 0 < length <= c:
            raise ValueError(f"arc length {length} outside (0, {c}]")
        object.__setattr__(self, "circumference", c)
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "start", to_fraction(self.start) % c)

    @property
    def angle(self) -> float:
        return 2 * math.pi * float(self.start / self.circumference)

    @property
    def end(self) -> Fraction:
        return self.start + self.length

    def shifted(self, d) -> "Arc":
        return Arc(self.start + to_fraction(d), self.circumference, self.length)


@dataclass(frozen=True)
class Box:
    """Axis-parallel d-cube with the given side length."""

    centre: tuple
    side: Fraction

    def __post_init__(self):
        object.__setattr__(self, "centre", tuple(to_fraction(x) for x in self.centre))
        object.__setattr__(self, "side", to_fraction(self.side))
        if self.side <= 0:
            raise ValueError("side must be positive")

    @property
    def half(self) -> Fraction:
        return self.side / 2

    def shifted(self, d) -> "Box":
        return Box(tuple(c + to_fraction(x) for c, x in zip(self.centre, d, strict=True)), self.side)


@dataclass(frozen=True)
class Ball:
    centre: tuple
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "centre", tuple(to_fraction(x) for x in self.centre))
        object.__setattr__(self, "radius", to_fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def half(self) -> Fraction:
        return self.radius

    def shifted(self, d) -> "Ball":
        return Ball(tuple(c + to_fraction(x) for c, x in zip(self.centre, d, strict=True)), self.radius)


def _kind_of(obj) -> str:
    if isinstance(obj, Interval):
        return "unit_interval" if obj.length == 1 else "interval"
    if isinstance(obj, Arc):
        return "unit_arc"
    if isinstance(obj, Box):
        return "box2d"
    if isinstance(obj, Ball):
        return "ball2d"
    raise TypeError(f"unsupported object {obj!r}")


@dataclass(frozen=True)
class WeightedInstance:
    objects: tuple
    weights: tuple = None
    kind: str = None
    metric: str = "L1"

    def __post_init__(self):
        objects = tuple(self.objects)
        if not objects:
            raise ValueError("an instance needs at least one object")
        weights = self.weights
        weights = (ONE,) * len(objects) if weights is None else tuple(to_fraction(w) for w in weights)
        if len(weights) != len(objects):
            raise DimensionError(f"{len(weights)} weights for {len(objects)} objects")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be strictly positive")
        kinds = {_kind_of(o) for o in objects}
        if kinds == {"unit_interval", "interval"}:
            kinds = {"interval"}
        if len(kinds) != 1:
            raise ValueError(f"mixed object kinds: {sorted(kinds)}")
        kind = self.kind or kinds.pop()
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if kind == "unit_interval" and any(o.length != 1 for o in objects):
            raise ValueError("unit_interval instance with non-unit length")
        if kind == "unit_arc":
            circles = {o.circumference for o in objects}
            if len(circles) != 1:
                raise ValueError("arcs lie on different circles")
            if any(o.length != 1 for o in objects):
                raise ValueError("unit_arc instance with non-unit arc")
        if self.metric not in ("L1", "L2"):
            raise ValueError(f"unknown metric {self.metric!r}")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "kind", kind)

    @classmethod
    def unit_intervals(cls, centres, weights=None) -> "WeightedInstance":
        return cls(tuple(Interval(c) for c in centres), weights, "unit_interval")

    @classmethod
    def unit_arcs(cls, starts, circumference, weights=None) -> "WeightedInstance":
        return cls(tuple(Arc(s, circumference) for s in starts), weights, "unit_arc")

    def __len__(self):
        return len(self.objects)

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def circumference(self) -> Fraction | None:
        if self.kind != "unit_arc":
            return None
        return self.objects[0].circumference

    @property
    def centres(self) -> tuple:
        if self.kind == "unit_arc":
            return tuple(o.start for o in self.objects)
        return tuple(o.centre for o in self.objects)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.weights)


def apply_dispersal(instance: WeightedInstance, dispersal: Sequence) -> WeightedInstance:
    """Translate every object by its entry of ``dispersal``; arcs move modulo |C|."""
    if len(dispersal) != instance.n:
        raise DimensionError(f"dispersal has {len(dispersal)} entries, instance has {instance.n}")
    moved = tuple(o.shifted(d) for o, d in zip(instance.objects, dispersal))
    return WeightedInstance(moved, instance.weights, instance.kind, instance.metric)


def _exact_sqrt(x: Fraction):
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return math.sqrt(x)


def weighted_cost(weights: Sequence, dispersal: Sequence, metric: str = "L1"):
    """Total weighted movement ``sum(w_i * |d_i|)``.

    Entries of ``dispersal`` may be scalars or vectors; vectors are measured
    with ``metric`` ("L1" or "L2"). The result is exact unless an L2 norm is
    irrational, in which case it is a float.
    """
    if len(weights) != len(dispersal):
        raise DimensionError(f"{len(weights)} weights for {len(dispersal)} displacements")
    total = Fraction(0)
    for w, d in zip(weights, dispersal):
        w = to_fraction(w)
        if isinstance(d, (tuple, list)):
            comps = [to_fraction(x) for x in d]
            if metric == "L1":
                norm = sum((abs(x) for x in comps), Fraction(0))
            elif metric == "L2":
                norm = _exact_sqrt(sum((x * x for x in comps), Fraction(0)))
            else:
                raise ValueError(f"unknown metric {metric!r}")
        else:
            norm = abs(to_fraction(d))
        total = total + w * norm
    return total


@dataclass(frozen=True)
class IntersectionGraph:
    n: int
    edges: tuple
    objects: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def is_interval_graph(self) -> bool:
        return self.objects is not None and all(isinstance(o, Interval) for o in self.objects)

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def _interval_edges(lefts, rights):
    order = sorted(range(len(lefts)), key=lambda i: (lefts[i], i))
    edges = []
    for pos, i in enumerate(order):
        r = rights[i]
        for j in order[pos + 1:]:
            if lefts[j] >= r:
                break
            edges.append((i, j) if i < j else (j, i))
    return edges


def _box_edges(objects):
    # sweep on x; exact integer coordinates after scaling
    dim = len(objects[0].centre)
    den = common_denominator(
        [c for o in objects for c in o.centre] + [o.half for o in objects]
    )

    def s(x):
        return x.numerator * (den // x.denominator)

    cen = [[s(c) for c in o.centre] for o in objects]
    half = [s(o.half) for o in objects]
    balls = isinstance(objects[0], Ball)
    lo = [cen[i][0] - half[i] for i in range(len(objects))]
    order = sorted(range(len(objects)), key=lambda i: (lo[i], i))
    edges = []
    for pos, i in enumerate(order):
        hi = cen[i][0] + half[i]
        ci, hi_i = cen[i], half[i]
        for j in order[pos + 1:]:
            if lo[j] >= hi:
                break
            cj, reach = cen[j], hi_i + half[j]
            if balls:
                overlap = sum((a - b) ** 2 for a, b in zip(ci, cj)) < reach * reach
            else:
                overlap = all(abs(ci[k] - cj[k]) < reach for k in range(dim))
            if overlap:
                edges.append((i, j) if i < j else (j, i))
    return edges


def intersection_graph(objects) -> IntersectionGraph:
    """Intersection graph of open objects of a single kind."""
    objects = tuple(objects.objects if isinstance(objects, WeightedInstance) else objects)
    n = len(objects)
    if n == 0:
        return IntersectionGraph(0, (), objects)
    first = objects[0]
    if isinstance(first, Interval):
        if not all(isinstance(o, Interval) for o in objects):
            raise ValueError("mixed object kinds")
        edges = _interval_edges([o.left for o in objects], [o.right for o in objects])
    elif isinstance(first, Arc):
        if not all(isinstance(o, Arc) for o in objects):
            raise ValueError("mixed object kinds")
        c = first.circumference
        if any(o.circumference != c for o in objects):
            raise ValueError("arcs lie on different circles")
        # two copies of the circle unrolled: every overlap shows up between some lifts
        lefts = [o.start for o in objects] + [o.start + c for o in objects]
        rights = [o.end for o in objects] + [o.end + c for o in objects]
        seen = set()
        for i, j in _interval_edges(lefts, rights):
            a, b = i % n, j % n
            if a != b:
                seen.add((min(a, b), max(a, b)))
        edges = list(seen)
    elif isinstance(first, (Box, Ball)):
        kind = type(first)
        if not all(type(o) is kind for o in objects):
            raise ValueError("mixed object kinds")
        if len({len(o.centre) for o in objects}) != 1:
            raise ValueError("objects of different dimensions")
        edges = _box_edges(objects)
    else:
        raise TypeError(f"unsupported object {first!r}")
    return IntersectionGraph(n, tuple(sorted(edges)), objects)


def max_interval_depth(objects) -> int:
    """Largest number of open intervals sharing a point (= max clique size)."""
    events = []
    for o in objects:
        events.append((o.left, 1))
        events.append((o.right, 0))
    # at equal coordinates closings (0) sort before openings (1)
    depth = best = 0
    for _, kind in sorted(events):
        depth += 1 if kind else -1
        best = max(best, depth)
    return best


def _is_forest(n, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            return False
        parent[a] = b
    return True


def _has_clique(adj, k) -> bool:
    def extend(size, candidates):
        if size == k:
            return True
        if size + len(candidates) < k:
            return False
        for v in sorted(candidates):
            if extend(size + 1, {u for u in candidates if u > v} & adj[v]):
                return True
        return False

    return extend(0, set(range(len(adj))))


def class_check(graph: IntersectionGraph, cls: str, k: int | None = None) -> bool:
    """Membership of ``graph`` in a graph class.

    ``cls`` is one of ``edgeless``, ``acyclic``, ``no_k_clique`` or
    ``has_k_clique`` (the last two need ``k >= 2``). Interval graphs answer
    clique questions with an endpoint sweep; other graphs fall back to an
    exhaustive search limited to 20 vertices.
    """
    if cls not in GRAPH_CLASSES:
        raise ValueError(f"unknown graph class {cls!r}")
    if cls == "edgeless":
        return not graph.edges
    if cls == "acyclic":
        return _is_forest(graph.n, graph.edges)
    if k is None or k < 2:
        raise ValueError(f"{cls} needs k >= 2, got {k}")
    if k > graph.n:
        found = False
    elif k == 2:
        found = bool(graph.edges)
    elif graph.is_interval_graph:
        found = max_interval_depth(graph.objects) >= k
    else:
        adj = graph.adjacency()
        if max((len(a) for a in adj), default=0) < k - 1:
            found = False
        elif graph.n > 20:
            raise ValueError("exhaustive clique search is limited to 20 vertices")
        else:
            found = _has_clique(adj, k)
    return found if cls == "has_k_clique" else not found


def brute_force_max_clique(graph: IntersectionGraph) -> int:
    """Clique number by enumerating vertex subsets; test oracle for tiny graphs."""
    adj = graph.adjacency()
    best = 1 if graph.n else 0
    for size in range(2, graph.n + 1):
        if any(all(b in adj[a] for a, b in combinations(sub, 2)) for sub in combinations(range(graph.n), size)):
            best = size
        else:
            break
    return best
