import random
from itertools import permutations

import pytest

from dispersal import _pycore, kernels

pytestmark = pytest.mark.skipif(kernels.compiled is None, reason="extension not built")


def test_backend_names():
    assert _pycore.BACKEND == "python"
    assert kernels.compiled.BACKEND == "cython"
    assert kernels.BACKEND in ("python", "cython")


def test_median_heap():
    h = _pycore.MedianHeap()
    for x in (5, 1, 4, 2):
        h.push(x)
    assert h.median() == 2
    other = _pycore.MedianHeap()
    for x in (3, 0):
        other.push(x)
    h.absorb(other)
    assert sorted(h.values()) == [0, 1, 2, 3, 4, 5]
    assert h.median() == 2


@pytest.mark.parametrize("cyclic", [False, True])
def test_pav_backends_agree(cyclic):
    rng = random.Random(7)
    for _ in range(3000):
        n = rng.randint(1, 9)
        if cyclic:
            base = [rng.randint(-20, 20) for _ in range(n)]
            base.sort()
            adjusted = [b - 3 * i for i, b in enumerate(base)]
            slack = rng.randint(0, 12)
            values = adjusted + [z + slack for z in adjusted]
        else:
            values = [rng.randint(-10, 10) for _ in range(n)]
        distinct = sorted(set(values))
        ranks = [distinct.index(v) for v in values]
        assert kernels.python.pav(ranks, n, cyclic) == kernels.compiled.pav(ranks, n, cyclic)


def test_hungarian_backends_agree():
    rng = random.Random(11)
    for _ in range(2000):
        m = rng.randint(1, 7)
        cost = [rng.randint(0, 30) for _ in range(m * m)]
        p_assign, _, _ = kernels.python.hungarian(cost, m)
        c_assign, _, _ = kernels.compiled.hungarian(cost, m)
        p_total = sum(cost[i * m + j] for i, j in enumerate(p_assign))
        c_total = sum(cost[i * m + j] for i, j in enumerate(c_assign))
        best = min(sum(cost[i * m + p[i]] for i in range(m)) for p in permutations(range(m)))
        assert p_total == c_total == best


def test_large_costs_fall_back_to_python():
    m = 3
    cost = [2**70 + i for i in range(m * m)]
    assign, u, v = kernels.hungarian(cost, m)
    assert sorted(assign) == [0, 1, 2]
    assert sum(cost[i * m + j] for i, j in enumerate(assign)) == sum(u) + sum(v)
