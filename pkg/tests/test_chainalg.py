import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgehh.chainalg import (ChainComplex, ChainComplexError, ChainMap, DiagramError, euler_from_betti,
                              induced_map, mapping_fiber, matrix_from_coo, matrix_to_coo, poset_holim, rank,
                              smith, subsets_upto)
from hodgehh.chainalg.smith import matmul
from hodgehh.rings import GF, QQ, ZZ
from hodgehh.simplicial import degree_map, standard_circle, standard_sphere


@st.composite
def three_term(draw):
    """Random C_2 -> C_1 -> C_0 over Z with d_1 d_2 = 0."""
    n0, n1 = draw(st.integers(1, 4)), draw(st.integers(1, 5))
    d1 = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n1, max_size=n1), min_size=n0, max_size=n0))
    S = smith(d1, ZZ)
    kernel = [[S.V[i][j] for j in range(S.rank, n1)] for i in range(n1)]
    k = n1 - S.rank
    n2 = draw(st.integers(0, 3))
    if k == 0 or n2 == 0:
        return ChainComplex.from_dense(ZZ, {1: d1}), d1, None
    coeff = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n2, max_size=n2), min_size=k, max_size=k))
    d2 = matmul(kernel, coeff, ZZ)
    return ChainComplex.from_dense(ZZ, {1: d1, 2: d2}), d1, d2


@given(three_term())
def test_homology_matches_ranks(data):
    C, d1, d2 = data
    r1 = rank(d1, QQ)
    r2 = rank(d2, QQ) if d2 else 0
    assert C.homology(0).betti == len(d1) - r1
    assert C.homology(1).betti == len(d1[0]) - r1 - r2
    tors1 = tuple(f for f in smith(d2, ZZ).invariant_factors(ZZ) if f > 1) if d2 else ()
    assert C.homology(1).torsion == tors1
    assert euler_from_betti(C) == C.euler_characteristic()


@given(three_term())
def test_homology_basis_cycles(data):
    C = data[0]
    for n in (0, 1, 2):
        hb = C.homology_basis(n)
        assert len(hb.free) == hb.record.betti
        for z in hb.free:
            assert C.boundary(z, n) == {}


@given(three_term(), st.sampled_from([2, 3, 5]))
def test_universal_coefficients_mod_p(data, p):
    C = data[0]
    Cp = C.change_ring(GF(p))
    for n in (0, 1, 2):
        tors = lambda k: sum(1 for t in C.homology(k).torsion if t % p == 0)
        expected = C.homology(n).betti + tors(n) + tors(n - 1)
        assert Cp.homology(n).betti == expected


def test_circle_and_sphere_homology():
    assert standard_circle(4).chains().betti_numbers(range(4)) == [1, 1, 0, 0]
    assert standard_sphere(2, 4).chains().betti_numbers(range(4)) == [1, 0, 1, 0]


def test_rejects_non_complex():
    with pytest.raises(ChainComplexError):
        ChainComplex.from_dense(ZZ, {1: [[1]], 2: [[1]]})


def test_rejects_non_chain_map():
    C = ChainComplex.from_dense(ZZ, {1: [[1]]})
    with pytest.raises(ChainComplexError):
        ChainMap(C, C, {1: {0: {0: 1}}})


def test_fiber_of_doubling_on_circle():
    S = standard_circle(3).chains()
    twice = ChainMap(S, S, {0: {0: {0: 1}}, 1: {0: {0: 2}}})
    F, proj, _ = mapping_fiber(twice)
    assert F.homology(0).betti == 0
    assert F.homology(0).torsion == (2,)
    assert F.homology(1).betti == 0


def test_fiber_of_identity_is_acyclic():
    S = standard_sphere(2, 3).chains()
    F, _, _ = mapping_fiber(ChainMap.identity(S))
    assert all(F.homology(n).betti == 0 and not F.homology(n).torsion for n in range(-1, 4))


@pytest.mark.parametrize("r", [-2, -1, 2, 3])
def test_degree_map_scalar(r):
    D = degree_map(r, 3)
    c = induced_map(D.map.chain_map(), 1)
    w = induced_map(D.equivalence.chain_map(), 1)
    assert w in ([[1]], [[-1]])
    assert c[0][0] * w[0][0] == r


def test_holim_with_top_element():
    S = standard_circle(3).chains()
    P = standard_sphere(2, 3).chains()
    zero = ChainMap.zero(S, P)
    T = poset_holim(["top", "a", "b"], lambda x, y: y == "top" and x != "top",
                    {"top": S, "a": S, "b": P},
                    {("top", "a"): ChainMap.identity(S), ("top", "b"): zero})
    assert T.complex.betti_numbers(range(-1, 3)) == [0, 1, 1, 0]


def test_holim_of_span_is_pullback_shift():
    S = standard_circle(3).chains()
    T = poset_holim(["a", "b", "c"], lambda x, y: x == "c" and y in ("a", "b"),
                    {"a": S, "b": S, "c": S},
                    {("a", "c"): ChainMap.identity(S), ("b", "c"): ChainMap.identity(S)})
    assert T.complex.betti_numbers(range(-1, 3)) == [0, 1, 1, 0]


def test_holim_rejects_noncommuting():
    S = standard_circle(3).chains()
    twice = ChainMap(S, S, {0: {0: {0: 1}}, 1: {0: {0: 2}}})
    less = lambda x, y: (x, y) in {(1, 2), (0, 1), (0, 2)}
    with pytest.raises(DiagramError):
        poset_holim([0, 1, 2], less, {0: S, 1: S, 2: S},
                    {(2, 1): twice, (1, 0): ChainMap.identity(S), (2, 0): ChainMap.identity(S)})


def test_subsets_upto():
    assert [sorted(s) for s in subsets_upto(3, 1)] == [[], [0], [1], [2]]
    assert len(subsets_upto(4, 2)) == 11


def test_coo_roundtrip():
    M = {0: {1: 3}, 2: {0: -1, 1: 4}}
    assert matrix_from_coo(matrix_to_coo(M)) == M
