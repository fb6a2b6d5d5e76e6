from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dispersal.geometry import (
    Arc,
    Ball,
    Box,
    DimensionError,
    Interval,
    WeightedInstance,
    apply_dispersal,
    brute_force_max_clique,
    class_check,
    intersection_graph,
    max_interval_depth,
    weighted_cost,
)

F = Fraction
rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def test_interval_endpoints():
    iv = Interval(F(1, 2))
    assert (iv.left, iv.right) == (0, 1)
    assert iv.right - iv.left == iv.length
    with pytest.raises(ValueError):
        Interval(0, 0)


def test_apply_dispersal_examples():
    inst = WeightedInstance.unit_intervals([F(1, 2), F(1, 2)])
    moved = apply_dispersal(inst, [-1, 0])
    assert [(o.left, o.right) for o in moved.objects] == [(-1, 0), (0, 1)]
    assert apply_dispersal(WeightedInstance.unit_intervals([F(1, 2)]), [0]).objects[0] == Interval(F(1, 2))
    with pytest.raises(DimensionError):
        apply_dispersal(inst, [0])


def test_arc_moves_modulo_circumference():
    arcs = WeightedInstance.unit_arcs([0], 2)
    moved = apply_dispersal(arcs, [F(3, 2)]).objects[0]
    assert moved.start == F(3, 2)
    assert moved.angle == pytest.approx(1.5 * 3.141592653589793)
    assert apply_dispersal(arcs, [F(5, 2)]).objects[0].start == F(1, 2)


def test_weighted_cost_examples():
    assert weighted_cost([1, 1], [-1, 0]) == 1
    assert weighted_cost([2, 3], [F(1, 2), -1]) == 4
    assert weighted_cost([1], [0]) == 0
    assert weighted_cost([1], [(F(3), F(4))], "L2") == 5
    assert weighted_cost([2], [(F(1), F(-1))], "L1") == 4
    with pytest.raises(DimensionError):
        weighted_cost([1, 2], [0])


def test_instance_validation():
    with pytest.raises(ValueError):
        WeightedInstance(())
    with pytest.raises(ValueError):
        WeightedInstance.unit_intervals([0], [0])
    with pytest.raises(DimensionError):
        WeightedInstance.unit_intervals([0, 1], [1])
    with pytest.raises(ValueError):
        WeightedInstance((Interval(0), Arc(0, 3)))
    with pytest.raises(ValueError):
        WeightedInstance((Arc(0, 3), Arc(0, 4)))


def test_intersection_graph_examples():
    touching = [Interval(F(1, 2)), Interval(F(3, 2))]
    assert intersection_graph(touching).edges == ()
    g = intersection_graph([Interval(F(1, 2)), Interval(1), Interval(F(5, 2))])
    assert g.edges == ((0, 1),)


def test_arcs_wrap_around():
    c = 4
    assert intersection_graph([Arc(F(7, 2), c), Arc(F(1, 4), c)]).edges == ((0, 1),)
    assert intersection_graph([Arc(3, c), Arc(0, c)]).edges == ()
    # antipodal arcs on a circle of circumference 2 touch twice but never overlap
    assert intersection_graph([Arc(0, 2), Arc(1, 2)]).edges == ()
    assert intersection_graph([Arc(0, 2), Arc(F(1, 2), 2)]).edges == ((0, 1),)


def test_boxes_and_balls_open_semantics():
    assert intersection_graph([Box((0, 0), 2), Box((2, 0), 2)]).edges == ()
    assert intersection_graph([Box((0, 0), 2), Box((F(19, 10), F(19, 10)), 2)]).edges == ((0, 1),)
    assert intersection_graph([Ball((0, 0), 1), Ball((F(6, 5), F(8, 5)), 1)]).edges == ()
    assert intersection_graph([Ball((0, 0), 1), Ball((1, 1), 1)]).edges == ((0, 1),)
    with pytest.raises(ValueError):
        intersection_graph([Box((0, 0), 1), Ball((0, 0), 1)])


def test_class_check_examples():
    assert class_check(intersection_graph([Interval(0), Interval(5)]), "acyclic")
    path = intersection_graph([Interval(F(1, 2)), Interval(F(14, 10)), Interval(F(23, 10))])
    assert class_check(path, "acyclic") and class_check(path, "no_k_clique", 3)
    tri = intersection_graph([Interval(0), Interval(F(1, 10)), Interval(F(2, 10))])
    assert not class_check(tri, "no_k_clique", 3)
    assert class_check(tri, "has_k_clique", 3)
    with pytest.raises(ValueError):
        class_check(tri, "no_k_clique", 1)
    with pytest.raises(ValueError):
        class_check(tri, "bipartite")


@given(st.lists(rationals, min_size=1, max_size=7), st.data())
def test_graph_invariant_under_permutation(centres, data):
    objs = [Interval(c) for c in centres]
    perm = data.draw(st.permutations(range(len(objs))))
    g1 = intersection_graph(objs)
    g2 = intersection_graph([objs[p] for p in perm])
    mapped = {tuple(sorted((perm[i], perm[j]))) for i, j in g2.edges}
    assert mapped == set(g1.edges)


@given(st.lists(rationals, min_size=1, max_size=7), st.lists(st.integers(1, 4), min_size=7, max_size=7), st.data())
def test_cost_invariant_under_permutation(centres, weights, data):
    w = weights[: len(centres)]
    d = data.draw(st.lists(rationals, min_size=len(centres), max_size=len(centres)))
    perm = data.draw(st.permutations(range(len(centres))))
    assert weighted_cost(w, d) == weighted_cost([w[p] for p in perm], [d[p] for p in perm])


@given(st.fractions(min_value=0, max_value=1, max_denominator=50).filter(lambda e: e > 0))
def test_open_set_threshold(eps):
    assert intersection_graph([Interval(F(1, 2)), Interval(F(3, 2) + eps)]).edges == ()
    assert intersection_graph([Interval(F(1, 2)), Interval(F(3, 2) - eps)]).edges == ((0, 1),)


@given(st.lists(st.fractions(min_value=0, max_value=4, max_denominator=4), min_size=1, max_size=8),
       st.lists(st.sampled_from([F(1, 2), F(1), F(3, 2)]), min_size=8, max_size=8))
def test_class_hierarchy_and_depth(centres, lengths):
    objs = [Interval(c, l) for c, l in zip(centres, lengths)]
    g = intersection_graph(objs)
    if class_check(g, "edgeless"):
        assert class_check(g, "acyclic")
    if class_check(g, "acyclic"):
        assert class_check(g, "no_k_clique", 3)
    assert max_interval_depth(objs) == brute_force_max_clique(g)
    for k in (2, 3, 4):
        assert class_check(g, "no_k_clique", k) == (brute_force_max_clique(g) < k)


def test_generic_clique_search_on_boxes():
    boxes = [Box((0, 0), 2), Box((1, 0), 2), Box((0, 1), 2), Box((5, 5), 1)]
    g = intersection_graph(boxes)
    assert class_check(g, "has_k_clique", 3)
    assert not class_check(g, "has_k_clique", 4)
