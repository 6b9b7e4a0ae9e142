from fractions import Fraction
from itertools import permutations
from math import comb

import pytest

from hodgehh.chainalg import HomologyRecord
from hodgehh.hodge_geom import (ArityBudgetExceeded, GeometryError, adams_layer_map, alpha_model_check,
                                connectivity_check, hodge_layer, left_inverse, rank_ladder, retract_check,
                                sign_of, symmetric_action, truncated_power)
from hodgehh.simplicial import standard_circle, standard_simplex, standard_sphere


def scalar(c, b):
    return [[Fraction(c) if i == j else 0 for j in range(b)] for i in range(b)]


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 4) for n in range(m + 1)])
def test_truncated_power_matches_alpha(m, n):
    assert alpha_model_check(standard_circle(), m, n)["equal"]


def test_full_truncation_is_the_power():
    tp = truncated_power(standard_circle(), 2, 2)
    assert tp.homology() == [HomologyRecord(0, 1), HomologyRecord(1, 2), HomologyRecord(2, 1)]


def test_arity_budget():
    with pytest.raises(ArityBudgetExceeded):
        truncated_power(standard_circle(), 5, 1)


def test_requires_reduced():
    with pytest.raises(GeometryError):
        truncated_power(standard_simplex(1, 4), 2, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_layer_concentrated_in_top_degree(n):
    L = hodge_layer(standard_circle(), n, n)
    betti = [L.complex.homology(i).betti for i in range(n + 2)]
    assert betti == [1 if i == n else 0 for i in range(n + 2)]
    assert all(not L.complex.homology(i).torsion for i in range(n + 2))


@pytest.mark.parametrize("n", [2, 3])
def test_symmetric_group_acts_by_sign(n):
    L = hodge_layer(standard_circle(), n, n)
    for perm in permutations(range(n)):
        assert symmetric_action(L, perm) == scalar(sign_of(perm), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r", [-1, 2, 3])
def test_adams_scalar(n, r):
    L = hodge_layer(standard_circle(), n, n)
    assert adams_layer_map(L, r) == scalar(Fraction(r) ** n, 1)


def test_adams_identity():
    L = hodge_layer(standard_circle(), 2, 1)
    assert adams_layer_map(L, 1) == scalar(1, 2)


def test_intermediate_layer():
    L = hodge_layer(standard_circle(), 2, 1)
    assert [L.complex.homology(i).betti for i in range(3)] == [0, 2, 0]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_ladder(n):
    result = rank_ladder(n)
    assert result["ok"]
    assert [s["rank_upper"] for s in result["steps"].values()] == [comb(n, i) for i in range(n)]


@pytest.mark.parametrize("X", [standard_circle(), standard_sphere(2)], ids=["S1", "S2"])
@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 4) for n in range(m)])
def test_retract_and_connectivity(X, m, n):
    assert retract_check(X, m, n)["ok"]
    assert connectivity_check(X, m, n)["ok"]


def test_left_inverse():
    L = left_inverse([[1, 0], [2, 1], [5, 3]])
    assert L is not None
    assert left_inverse([[2]]) is None
    assert left_inverse([[1, 1]]) is None


def test_sign_of():
    assert sign_of((1, 0, 2)) == -1
    assert sign_of((1, 2, 0)) == 1
