import json
from pathlib import Path

import pytest

from hodgehh.cli import BUILTIN_ALGEBRAS, load_algebra
from hodgehh.loday import (AlgebraError, BudgetExceeded, augmentation_module, dual_numbers, free_module,
                           leibniz_defect, loday_complex, loday_with_coefficients, multiplicativity_check,
                           parse_algebra, polynomial, quotient_above, truncated_polynomial, weight_filtration,
                           weight_layer)
from hodgehh.rings import GF, QQ, ZZ
from hodgehh.simplicial import point, product, standard_circle, standard_sphere

ORACLE = json.loads((Path(__file__).parent / "fixtures" / "hh_oracle.json").read_text())


def per_weight(L, top=3):
    return {str(w): L.complex.weight_block(w).betti_numbers(range(top + 1)) for w in L.weights}


def test_dual_numbers_match_oracle():
    L = loday_complex(dual_numbers(), standard_circle(), 3, 4)
    assert per_weight(L) == ORACLE["dual_numbers"]


def test_polynomial_matches_oracle():
    L = loday_complex(polynomial("x", 4), standard_circle(), 3, 4)
    assert per_weight(L) == ORACLE["polynomial_x_w4"]


def test_oracle_fixture_is_current():
    from oracle_bar import generate

    assert generate() == ORACLE


@pytest.mark.parametrize("name", sorted(BUILTIN_ALGEBRAS))
def test_degree_zero_is_the_algebra(name):
    R = load_algebra(name, None)
    W = R.truncation if R.truncation is not None else 4
    L = loday_complex(R, standard_circle(), 1, W)
    for w in L.weights:
        assert L.complex.weight_block(w).homology(0).betti == len(R.basis_of_weight(w))


def test_integral_torsion_for_dual_numbers():
    L = loday_complex(dual_numbers(ZZ), standard_circle(), 3, 4)
    recs = [L.complex.weight_block(w).homology(1) for w in L.weights]
    assert sorted(t for r in recs for t in r.torsion) == [2]


def test_characteristic_two_dual_numbers():
    L = loday_complex(dual_numbers(GF(2)), standard_circle(), 3, 4)
    assert L.complex.weight_block(2).betti_numbers(range(4)) == [0, 1, 1, 0]


def test_point_gives_algebra():
    L = loday_complex(polynomial("x", 3), point(4), 2, 3)
    assert L.complex.betti_numbers(range(3)) == [4, 0, 0]


def test_sphere_loday_of_polynomial():
    L = loday_complex(polynomial("x", 4), standard_sphere(2), 3, 4)
    assert L.complex.betti_numbers(range(4)) == [5, 0, 4, 0]


def test_torus_loday_of_dual_numbers_degree_zero():
    T = product(standard_circle(4), standard_circle(4))
    L = loday_complex(dual_numbers(), T, 1, 2)
    assert L.complex.homology(0).betti == 2


def test_ground_coefficients_reduce_to_augmentation():
    R = polynomial("x", 3)
    L = loday_with_coefficients(R, augmentation_module(R), standard_circle(), 2, 3)
    assert L.complex.betti_numbers(range(3)) == [1, 1, 0]


def test_free_coefficients_agree_with_plain_complex():
    R = dual_numbers()
    L1 = loday_complex(R, standard_circle(), 3, 4)
    L2 = loday_with_coefficients(R, free_module(R), standard_circle(), 3, 4)
    assert L1.complex.betti_numbers(range(4)) == L2.complex.betti_numbers(range(4))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        loday_complex(polynomial("xy", 6), standard_circle(), 4, 6, rank_budget=50)


def test_parse_rejects_inconsistent_table():
    text = "RING Q\nBASIS 1 0\nBASIS a 1\nBASIS b 1\nMUL a a -> b\nMUL a b -> a\nAUG 1\n"
    with pytest.raises(AlgebraError):
        parse_algebra(text)


def test_truncated_polynomial_structure():
    R = truncated_polynomial(3)
    assert R.names == ["1", "x", "x^2"]
    L = loday_complex(R, standard_circle(), 2, None)
    assert L.weight_bound is None


# filtration


def test_filtration_is_subcomplex_chain():
    L = loday_complex(dual_numbers(), standard_circle(), 3, 4)
    for n in range(4):
        stage = weight_filtration(L, n)
        stage.inclusion.validate()
        if stage.from_previous is not None:
            stage.from_previous.validate()


def test_first_layer_of_dual_numbers():
    L = loday_complex(dual_numbers(), standard_circle(), 3, 4)
    assert weight_layer(L, 1).betti_numbers(range(4)) == [1, 1, 0, 0]


@pytest.mark.parametrize("R", [dual_numbers(), polynomial("x", 4)], ids=["dual", "poly"])
def test_quotient_above_vanishes_below_level(R):
    L = loday_complex(R, standard_circle(), 3, 4)
    for n in range(1, 4):
        Q = quotient_above(L, n)
        assert all(Q.homology(i).betti == 0 for i in range(n))


@pytest.mark.parametrize("R, rank", [(dual_numbers(), 1), (polynomial("x", 4), 2)], ids=["dual", "poly"])
def test_quotient_above_is_nonzero_at_level(R, rank):
    L = loday_complex(R, standard_circle(), 3, 4)
    assert quotient_above(L, 2).homology(2).betti == rank


@pytest.mark.parametrize("R", [dual_numbers(), polynomial("x", 4)], ids=["dual", "poly"])
def test_shuffle_product_is_leibniz(R):
    L = loday_complex(R, standard_circle(), 3, 4)
    for p in range(3):
        for q in range(3 - p):
            for i in range(L.complex.rank(p)):
                for j in range(L.complex.rank(q)):
                    assert leibniz_defect(L, p, i, q, j) == {}


@pytest.mark.parametrize("R", [dual_numbers(), polynomial("x", 4), polynomial("xy", 2)],
                         ids=["dual", "poly", "poly2"])
def test_filtration_is_multiplicative(R):
    L = loday_complex(R, standard_circle(), 4, R.truncation or 4)
    result = multiplicativity_check(L, 4)
    assert result["ok"] and result["pairs"] > 0
