from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgehh.fincat import groupoid_pair, ordinal
from hodgehh.fincat.checks import corpus
from hodgehh.simplicial import (SimplicialError, SimplicialSet, alpha_subcomplex, check_twisted, degree_map,
                                doubling_is_functorial, fiber_vertices, hom_projection, nerve, nerve_comparison,
                                point, power, product, standard_circle, standard_simplex, standard_sphere,
                                surjections, twisted)


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("q", range(5))
def test_simplex_counts(k, q):
    assert standard_simplex(k, 6).count(q) == comb(q + k + 1, k)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sphere_counts_and_homology(d):
    S = standard_sphere(d, 5)
    assert S.count(d) == 2
    assert S.count(d + 1) == d + 2
    betti = S.chains().betti_numbers(range(5))
    assert betti == [1 if n in (0, d) else 0 for n in range(5)]


def test_sphere2_dimension_two_count():
    assert standard_sphere(2).count(2) == 2


def test_torus_homology():
    T = product(standard_circle(4), standard_circle(4))
    assert T.nondegenerate_counts(2) == (1, 3, 2)
    assert T.chains().betti_numbers(range(4)) == [1, 2, 1, 0]


def test_power_and_alpha_counts():
    S = standard_circle(4)
    P = power(S, 3)
    assert P.chains().betti_numbers(range(4)) == [1, 3, 3, 1]
    A = alpha_subcomplex(S, 3, 1)
    assert A.chains().betti_numbers(range(4)) == [1, 3, 0, 0]


def test_alpha_needs_reduced():
    with pytest.raises(SimplicialError):
        alpha_subcomplex(standard_simplex(1, 3), 2, 1)


@pytest.mark.parametrize("X", [standard_simplex(2, 4), standard_sphere(2, 4), standard_circle(4),
                               product(standard_circle(3), standard_simplex(1, 3))], ids=str)
def test_identities_on_all_simplices(X):
    X.check_identities(min(X.truncation, 4))


@pytest.mark.parametrize("X", [standard_simplex(2, 4), standard_sphere(2, 4), degree_map(-2, 4).space,
                               product(standard_circle(3), standard_circle(3))], ids=str)
def test_text_roundtrip(X):
    Y = SimplicialSet.from_text(X.to_text())
    assert Y.nondegenerate_counts() == X.nondegenerate_counts()
    assert Y.chains().betti_numbers() == X.chains().betti_numbers()
    assert Y.to_text() == X.to_text()


def test_bad_faces_rejected():
    with pytest.raises(SimplicialError):
        SimplicialSet({0: ["a", "b"], 1: ["e"]}, {"e": (((0,), "a"),)}, 2)


@given(st.integers(0, 5), st.integers(0, 5))
def test_surjection_count(q, p):
    assert len(list(surjections(q, p))) == (comb(q, p) if p <= q else 0)


@pytest.mark.parametrize("r", [-2, -1, 0, 1, 2, 3])
def test_degree_models_are_circles(r):
    D = degree_map(r, 3)
    assert D.space.chains().betti_numbers(range(3)) == [1, 1, 0]


def test_nerve_of_ordinal_is_contractible():
    N = nerve(ordinal(3), 4)
    assert N.chains().betti_numbers(range(4)) == [1, 0, 0, 0]


def test_nerve_of_groupoid():
    N = nerve(groupoid_pair(), 4)
    assert N.chains().betti_numbers(range(4)) == [1, 0, 0, 0]


# twisted construction


@pytest.mark.parametrize("n", range(6))
def test_twisted_interval_counts(n):
    T = twisted(standard_simplex(1, 11), 5)
    assert T.count(n) == 2 * n + 3


def test_doubling_functorial():
    assert doubling_is_functorial(4)


@pytest.mark.parametrize("X", [standard_simplex(1, 7), standard_simplex(2, 7), standard_sphere(2, 7),
                               standard_circle(7)], ids=str)
def test_twisted_identities_brute_force(X):
    T = twisted(X, 3)
    T.check_identities(3)
    check_twisted(T, 3)


@pytest.mark.parametrize("C", corpus("tiny"), ids=lambda C: C.name)
def test_twisted_nerve_comparison(C):
    _, bijective = nerve_comparison(C, 2)
    assert bijective


def test_hom_projection_fibers_count_arrows():
    C = ordinal(3)
    T = twisted(nerve(C, 3, check=False), 1)
    _, proj = hom_projection(T)
    for a in C.objects:
        for b in C.objects:
            homs = [m for m in C.morphisms if C.source[m] == a and C.target[m] == b]
            assert len(fiber_vertices(T, proj, (a,), (b,))) == len(homs)


def test_twisted_point():
    T = twisted(point(5), 2)
    assert [T.count(n) for n in range(3)] == [1, 1, 1]
