from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgehh.chainalg import ChainMap, induced_map
from hodgehh.chainalg.smith import matmul
from hodgehh.eulerian import (EulerianError, SymAlgebraElement, adams_element, adams_matrix, adams_operator,
                              eigen_multiplicities, eulerian_idempotents, hodge_components, idempotent_operator,
                              sign, verify_idempotents)
from hodgehh.loday import dual_numbers, loday_complex, polynomial
from hodgehh.rings import ZZ
from hodgehh.simplicial import standard_circle


def shuffle_sum(q, r):
    """Brute force: Σ over compositions of q into r parts and their block shuffles of sgn(σ) σ."""
    out = {}
    for cuts in combinations_with_replacement(range(q + 1), r - 1):
        bounds = (0,) + cuts + (q,)
        blocks = [range(bounds[k], bounds[k + 1]) for k in range(r)]
        for sigma in permutations(range(q)):
            if all(sigma[i] < sigma[i + 1] for b in blocks for i in b if i + 1 in b):
                out[sigma] = out.get(sigma, 0) + sign(sigma)
    return SymAlgebraElement(q, out)


@pytest.mark.parametrize("q", range(1, 5))
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_adams_element_matches_shuffles(q, r):
    assert adams_element(q, r) == shuffle_sum(q, r)


def test_adams_one_is_identity():
    for q in range(1, 5):
        assert adams_element(q, 1) == SymAlgebraElement.identity(q)


@pytest.mark.parametrize("q", range(1, 5))
def test_adams_composition_in_group_algebra(q):
    for r in (2, 3):
        for s in (2, 3):
            assert adams_element(q, r) * adams_element(q, s) == adams_element(q, r * s)


@pytest.mark.parametrize("q", range(0, 7))
def test_idempotents_verified(q):
    assert verify_idempotents(q) == {"q": q, "idempotent": True, "orthogonal": True, "sum_to_one": True}


def test_idempotents_small_q_direct():
    for q in range(1, 5):
        es = eulerian_idempotents(q)
        for i, a in enumerate(es):
            for j, b in enumerate(es):
                assert a * b == (a if i == j else SymAlgebraElement(q, {}))


def test_first_idempotent_q2():
    e1, e2 = eulerian_idempotents(2)
    half = Fraction(1, 2)
    # sgn(τ) = -1 sits in the coefficient, so e^(1) = (1 + τ)/2 here
    assert e1.coeffs == {(0, 1): half, (1, 0): half}
    assert e2.coeffs == {(0, 1): half, (1, 0): -half}


def test_budget():
    with pytest.raises(EulerianError):
        eulerian_idempotents(8)


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_group_product_is_composition(s, t):
    a, b = SymAlgebraElement(4, {tuple(s): 1}), SymAlgebraElement(4, {tuple(t): 1})
    word = ("a", "b", "c", "d")
    lhs = (a * b).act(word)
    rhs = {}
    for w, c in b.act(word).items():
        for w2, c2 in a.act(w).items():
            rhs[w2] = rhs.get(w2, 0) + c * c2
    assert lhs == rhs


@pytest.fixture(scope="module", params=["dual", "poly"])
def hh(request):
    R = dual_numbers() if request.param == "dual" else polynomial("x", 4)
    return loday_complex(R, standard_circle(), 3, 4)


def test_operators_are_chain_maps(hh):
    for r in (-1, 2, 3):
        op = adams_operator(hh, r)
        ChainMap(op.source, op.target, op.maps)
    for i in range(4):
        op = idempotent_operator(hh, i)
        ChainMap(op.source, op.target, op.maps)


def test_adams_composition_on_homology(hh):
    mats = {r: adams_matrix(hh, r) for r in (2, 3, 6)}
    for key, M6 in mats[6].items():
        assert matmul(mats[2][key], mats[3][key]) == M6
        assert matmul(mats[3][key], mats[2][key]) == M6


def test_eigenvalues_match_components(hh):
    comps = hodge_components(hh)
    for r in (-1, 2, 3):
        for (n, w), M in adams_matrix(hh, r).items():
            dims = {}
            for c in comps:
                if c.degree == n and c.weight == w and c.dim:
                    lam = Fraction(r) ** c.index
                    dims[lam] = dims.get(lam, 0) + c.dim
            assert eigen_multiplicities(M, sorted(dims) + [Fraction(0), Fraction(5)]) == dims
            assert sum(dims.values()) == len(M)


def test_smooth_algebra_is_top_component():
    L = loday_complex(polynomial("x", 4), standard_circle(), 3, 4)
    for c in hodge_components(L):
        if c.dim:
            assert c.index == c.degree or c.degree == 0


def test_dual_numbers_components():
    L = loday_complex(dual_numbers(), standard_circle(), 3, 4)
    nonzero = {(c.degree, c.weight, c.index): c.dim for c in hodge_components(L) if c.dim}
    assert nonzero == {(0, 0, 0): 1, (0, 1, 0): 1, (1, 1, 1): 1, (2, 3, 1): 1, (3, 3, 2): 1}


def test_two_variables_adams_eigenvalues():
    L = loday_complex(polynomial("xy", 2), standard_circle(), 2, 2)
    M = adams_matrix(L, 2)
    assert eigen_multiplicities(M[(2, 2)], [Fraction(1), Fraction(2), Fraction(4)]) == {Fraction(4): 1}


def test_integral_algebra_rejected():
    with pytest.raises(EulerianError):
        hodge_components(loday_complex(dual_numbers(ZZ), standard_circle(), 2, 2))
