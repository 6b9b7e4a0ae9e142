from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgehh.chainalg import determinant, invariant_factors, rank, smith, smith_normal_form
from hodgehh.chainalg.smith import identity, matmul
from hodgehh.rings import GF, QQ, ZZ, parse_ring


def matrices(max_dim=5, lo=-6, hi=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def leibniz(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = (-1) ** inv
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


@given(matrices())
def test_smith_certificates(M):
    S = smith(M, ZZ)
    D = matmul(matmul(S.U, M, ZZ), S.V, ZZ)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            expected = S.diagonal[i] if i == j and i < S.rank else 0
            assert x == expected
    assert matmul(S.U, S.Uinv, ZZ) == identity(len(M), ZZ)
    assert matmul(S.V, S.Vinv, ZZ) == identity(len(M[0]), ZZ)


@given(matrices())
def test_invariant_factors_divide(M):
    fs = invariant_factors(M, ZZ)
    assert all(f > 0 for f in fs)
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


@given(matrices())
def test_rank_agrees_across_methods(M):
    r = rank(M, QQ)
    assert r == smith(M, ZZ).rank == rank(M, ZZ)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(M):
    assert determinant(M, ZZ) == leibniz(M)
    assert determinant(M, QQ) == Fraction(leibniz(M))
    assert determinant(M, GF(7)) == leibniz(M) % 7


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_product_of_invariant_factors_is_abs_det(M):
    fs = invariant_factors(M, ZZ)
    d = leibniz(M)
    prod = 1
    for f in fs:
        prod *= f
    assert (prod if len(fs) == len(M) else 0) == abs(d)


def test_known_smith_form():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], ZZ) == (2, 6, 12)


def test_sparse_input():
    fs, S = smith_normal_form(({0: {0: 2}, 1: {1: 3}}, (2, 2)))
    assert fs == (1, 6)


def test_field_rank_mod_p():
    assert rank([[2, 0], [0, 2]], GF(2)) == 0
    assert rank([[2, 0], [0, 2]], GF(3)) == 2


@pytest.mark.parametrize("tag, name", [("Z", "Z"), ("Q", "Q"), ("F5", "F5"), ("F_7", "F7")])
def test_parse_ring(tag, name):
    assert parse_ring(tag).name == name


@pytest.mark.parametrize("tag", ["F4", "R", "F1"])
def test_parse_ring_rejects(tag):
    with pytest.raises(ValueError):
        parse_ring(tag)
