"""Acceptance criteria 1-8.

Run ``pytest tests/test_acceptance.py`` (or this file directly); the terminal
summary prints one PASS/FAIL line per criterion.
"""

import gc
import random
import sys
import time
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dispersal.arcs import ArcInstance, disperse_arcs, solve_arcs
from dispersal.assignment import min_cost_perfect_matching
from dispersal.geometry import Interval, apply_dispersal, class_check, intersection_graph
from dispersal.hardness import (
    ThreePartitionInstance,
    barriers_disjoint,
    check_yes_packing,
    gen_2d_instance,
    gen_interval_instance,
    threshold_T,
    valid_multisets,
)
from dispersal.oracle import (
    brute_force_arcs,
    brute_force_intervals,
    certificate_from_dispersal,
    verify_certificate,
)
from dispersal.unit import disperse_unit_intervals, unit_blocks
from dispersal.weighted import (
    disperse_clique,
    disperse_xp,
    enumerate_slot_sets,
    maximal_cliques,
    solve_clique,
    solve_xp,
)

F = Fraction
criterion = pytest.mark.criterion


def l1(d, w=None):
    w = w or [1] * len(d)
    return sum((x * abs(y) for x, y in zip(w, d)), F(0))


def quarters(rng, n, top=16):
    return [F(rng.randint(0, top), 4) for _ in range(n)]


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


@criterion(1, "unit intervals match the oracle on 500 instances")
def test_unit_intervals_match_oracle():
    rng = random.Random(1)
    with Budget(30):
        for _ in range(500):
            centres = quarters(rng, rng.randint(1, 6))
            assert l1(disperse_unit_intervals(centres)) == brute_force_intervals(centres)[1], centres


@criterion(2, "weighted solver matches the oracle on 300 instances; clique equals xp")
def test_weighted_match_oracle():
    rng = random.Random(2)
    singles = 0
    with Budget(120):
        for _ in range(300):
            n = rng.randint(1, 5)
            centres = quarters(rng, n)
            weights = [rng.choice((1, 2, 3, 5)) for _ in range(n)]
            d = disperse_xp(centres, weights)
            assert l1(d, weights) == brute_force_intervals(centres, weights)[1], (centres, weights)
            if maximal_cliques(centres).k == 1:
                singles += 1
                assert disperse_clique(centres, weights) == d, (centres, weights)
        for _ in range(200):
            n = rng.randint(1, 5)
            centres = [F(rng.randint(0, 7), 8) for _ in range(n)]
            weights = [rng.choice((1, 2, 3, 5)) for _ in range(n)]
            assert disperse_clique(centres, weights) == disperse_xp(centres, weights), (centres, weights)
    assert singles > 0


@criterion(3, "arcs match the oracle on 200 instances; at most n-1 shifts")
def test_arcs_match_oracle():
    rng = random.Random(3)
    with Budget(60):
        for _ in range(200):
            c = rng.choice((3, 4, 5))
            n = rng.randint(1, min(4, c))
            inst = ArcInstance(tuple(F(rng.randrange(4 * c), 4) for _ in range(n)), c)
            sol = solve_arcs(inst)
            assert sol.cost == l1(sol.dispersal) == brute_force_arcs(inst)[1], inst
            assert sol.shifts <= n - 1


def _min_time(fn, arg, repeats):
    best = float("inf")
    for _ in range(repeats):
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter()
            fn(arg)
            best = min(best, time.perf_counter() - t0)
        finally:
            gc.enable()
    return best


def _random_arcs(rng, n):
    # circumference 2n, starts on a quarter grid: normalised and well mixed
    return ArcInstance(tuple(F(rng.randrange(8 * n), 4) for _ in range(n)), 2 * n)


@criterion(4, "arc solver ratio <= 2.4 per doubling at 2^14..2^16; clique ratio <= 18 at 50 -> 100")
def test_complexity_ratios():
    rng = random.Random(4)
    groups = [[_random_arcs(rng, 2**e) for _ in range(3)] for e in (14, 15, 16)]
    disperse_arcs(groups[0][0])
    times = [sum(_min_time(disperse_arcs, inst, 5) for inst in g) for g in groups]
    arc_ratios = [times[i + 1] / times[i] for i in range(2)]

    def clique(n):
        return [F(rng.randrange(1000), 1001) for _ in range(n)], [rng.randint(1, 9) for _ in range(n)]

    cases = [clique(50), clique(100)]
    ctimes = [_min_time(lambda c: disperse_clique(*c), c, 3) for c in cases]
    clique_ratio = ctimes[1] / ctimes[0]
    print(f"arc ratios {[round(r, 2) for r in arc_ratios]}, clique ratio {clique_ratio:.1f}")
    assert all(r <= 2.4 for r in arc_ratios), arc_ratios
    assert clique_ratio <= 18, clique_ratio


@criterion(5, "matching equals the permutation minimum on 1000 matrices")
def test_matching_optimal():
    rng = random.Random(5)
    with Budget(10):
        for t in range(1000):
            m = rng.randint(1, 7)
            if t % 4 == 0:
                costs = [[F(rng.randint(0, 40), rng.randint(1, 6)) for _ in range(m)] for _ in range(m)]
            else:
                costs = [[rng.randint(0, 100) for _ in range(m)] for _ in range(m)]
            assignment, total = min_cost_perfect_matching(costs)
            assert sorted(assignment) == list(range(m))
            assert total == sum(costs[i][assignment[i]] for i in range(m))
            assert total == min(sum(costs[i][p[i]] for i in range(m)) for p in permutations(range(m)))


@criterion(6, "yes-packings stay below the threshold and verify, L in {5,6,7,8}")
@pytest.mark.parametrize("L", [5, 6, 7, 8])
def test_reduction_sanity(L):
    with Budget(10):
        multisets = valid_multisets(1, L)
        for values in multisets:
            for order in sorted(set(permutations(values))):
                tp = ThreePartitionInstance(order, L)
                inst = gen_interval_instance(tp)
                packing = check_yes_packing(inst, [order])
                assert packing.valid and packing.cost < threshold_T(1, L) == inst.threshold
                moved = apply_dispersal(inst.to_instance(), packing.dispersal)
                assert class_check(intersection_graph(moved), "edgeless")
                k3 = gen_interval_instance(tp, k=3)
                packed = check_yes_packing(k3, [order])
                assert packed.cost < k3.threshold
                moved = apply_dispersal(k3.to_instance(), packed.dispersal)
                assert class_check(intersection_graph(moved), "no_k_clique", 3)
    # no three values in (L/4, L/2) sum to 5 or 8
    assert bool(multisets) == (L in (6, 7))


_cases = {"n": 0}


def _count():
    _cases["n"] += 1


def _runs(positions):
    """Maximal runs of sorted positions at pitch exactly 1, as index lists."""
    order = sorted(range(len(positions)), key=lambda i: positions[i])
    runs = [[order[0]]] if order else []
    for a, b in zip(order, order[1:]):
        if positions[b] - positions[a] == 1:
            runs[-1].append(b)
        else:
            runs.append([b])
    return runs


quarter_lists = st.lists(st.integers(0, 24).map(lambda x: F(x, 4)), min_size=1, max_size=12)


@st.composite
def weighted(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    centres = draw(st.lists(st.integers(0, 16).map(lambda x: F(x, 4)), min_size=n, max_size=n))
    weights = draw(st.lists(st.sampled_from([1, 2, 3, 5]), min_size=n, max_size=n))
    return centres, weights


@criterion(7, "structural invariants over 10^4 property cases")
@settings(max_examples=4000)
@given(quarter_lists)
def test_unit_invariants(centres):
    _count()
    d = disperse_unit_intervals(centres)
    pos = [c + x for c, x in zip(centres, d)]
    srt = sorted(pos)
    for blk in unit_blocks(centres):
        block = srt[blk.start : blk.stop + 1]
        assert all(b - a == 1 for a, b in zip(block, block[1:]))
        assert block[0] == blk.anchor
        members = [i for i, p in enumerate(pos) if blk.anchor <= p <= blk.last_position]
        assert any(d[i] == 0 for i in members)
    for run in _runs(pos):
        assert any(d[i] == 0 for i in run)
    assert verify_certificate(certificate_from_dispersal(centres, [1] * len(centres), d))


@criterion(7, "structural invariants over 10^4 property cases")
@settings(max_examples=2500)
@given(weighted())
def test_xp_invariants(case):
    _count()
    centres, weights = case
    n = len(centres)
    sol = solve_xp(centres, weights)
    assert len(sol.fixed) <= sol.k == maximal_cliques(centres).k
    assert all(sol.dispersal[i] == 0 for i in sol.fixed)
    pos = [c + x for c, x in zip(centres, sol.dispersal)]
    for run in _runs(pos):
        assert any(sol.dispersal[i] == 0 for i in run)
    for p in pos:
        assert any((p - c).denominator == 1 and abs(p - c) <= 2 * n for c in centres)
    for slots in enumerate_slot_sets(centres, sol.fixed, weights):
        for s in slots.positions:
            assert any((s - c).denominator == 1 and abs(s - c) <= 2 * n for c in centres)
    assert verify_certificate(certificate_from_dispersal(centres, weights, sol.dispersal))


@st.composite
def single_cliques(draw):
    n = draw(st.integers(1, 6))
    centres = draw(st.lists(st.integers(0, 7).map(lambda x: F(x, 8)), min_size=n, max_size=n))
    weights = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    return centres, weights


@criterion(7, "structural invariants over 10^4 property cases")
@settings(max_examples=2000)
@given(single_cliques())
def test_clique_invariants(case):
    _count()
    centres, weights = case
    sol = solve_clique(centres, weights)
    assert sol.dispersal[sol.anchor] == 0
    pos = sorted(c + x for c, x in zip(centres, sol.dispersal))
    assert all(b - a == 1 for a, b in zip(pos, pos[1:]))
    assert verify_certificate(certificate_from_dispersal(centres, weights, sol.dispersal))


@st.composite
def arc_instances(draw):
    c = draw(st.integers(3, 9))
    n = draw(st.integers(1, c))
    starts = draw(st.lists(st.integers(0, 4 * c - 1).map(lambda x: F(x, 4)), min_size=n, max_size=n))
    return ArcInstance(tuple(starts), c)


@criterion(7, "structural invariants over 10^4 property cases")
@settings(max_examples=2000)
@given(arc_instances())
def test_arc_invariants(inst):
    _count()
    sol = solve_arcs(inst)
    c = inst.circumference
    assert sol.shifts <= max(inst.n - 1, 0)
    assert all(-c / 2 < x <= c / 2 for x in sol.dispersal)
    assert any(x == 0 for x in sol.dispersal)
    pos = sorted((s + x) % c for s, x in zip(inst.starts, sol.dispersal))
    gaps = [b - a for a, b in zip(pos, pos[1:])] + [pos[0] + c - pos[-1]] if inst.n > 1 else []
    assert all(g >= 1 for g in gaps)


@criterion(7, "structural invariants over 10^4 property cases")
def test_invariant_case_count():
    assert _cases["n"] >= 10**4, _cases


@criterion(8, "2-D generator at m=1, L=6, delta=24: disjoint barriers, elements overlap the left barrier")
@pytest.mark.parametrize("shape", ["square", "disk"])
def test_2d_generator(shape):
    tp = ThreePartitionInstance((2, 2, 2), 6)
    with Budget(10):
        full = gen_2d_instance(tp, shape, 24)
        assert full.delta == 24 and barriers_disjoint(full)
        b0 = next(g for g in full.grids if g.block == "0")
        x0, y0, x1, y1 = b0.rect
        for e in full.elements:
            h = e.half
            assert e.centre[0] - h < x1 and e.centre[0] + h > x0
            assert e.centre[1] - h < y1 and e.centre[1] + h > y0

        coarse = gen_2d_instance(tp, shape, 24, resolution=1)
        assert barriers_disjoint(coarse)
        prov = coarse.provenance()
        elements = [i for i, p in enumerate(prov) if p["role"] == "element"]
        graph = intersection_graph(coarse.objects())
        for i, j in graph.edges:
            assert i in elements or j in elements
        for e in elements:
            hit = {prov[i + j - e].get("block") for i, j in graph.edges if e in (i, j)}
            assert "0" in hit
        packing = check_yes_packing(coarse, [(2, 2, 2)])
        moved = apply_dispersal(coarse.to_instance(), packing.dispersal)
        assert class_check(intersection_graph(moved), "edgeless")


def test_interval_reference_examples():
    # sanity anchors for the suite above
    assert l1(disperse_unit_intervals([0, 0, 0])) == 2
    assert l1(disperse_arcs(ArcInstance((0, 0), 2))) == 1
    assert isinstance(gen_interval_instance(ThreePartitionInstance((2, 2, 2), 6)).elements[0], Interval)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
