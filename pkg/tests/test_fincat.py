from collections import Counter
from math import prod

import pytest

from hodgehh.fincat import (MOD, SET, CategoryError, FinCat, FunctorTable, PresentedModule, colimit,
                            discrete, groupoid_pair, hom_bifunctor, left_kan, monoid, nat_transformations, ordinal,
                            terminal)
from hodgehh.fincat.checks import (check_cofinality, check_coend_colim, check_end_nat, check_kan, corpus,
                                   run_categorical_suite)
from hodgehh.fincat.enumerate import sample_module_functors, set_functors, small_categories
from hodgehh.fincat.functors import CatFunctor


@pytest.fixture(scope="module")
def small():
    return corpus("small")


def test_corpus_size(small):
    assert len(small) == 277


def test_monoid_counts_by_order():
    counts = Counter(len(C.morphisms) for C in small_categories(1, 3))
    assert counts == {1: 1, 2: 2, 3: 7, 4: 35}


def test_corpus_categories_validate(small):
    for C in small:
        FinCat(C.objects, {m: (C.source[m], C.target[m]) for m in C.morphisms}, C.composition,
               C.identities, check=True)


def test_text_roundtrip(small):
    for C in small[::10]:
        D = FinCat.from_text(C.to_text())
        assert D.to_text() == C.to_text()


def test_non_associative_rejected():
    # {e, a} with a*a = e but a*e = a, e*a = e: breaks unitality
    with pytest.raises(CategoryError):
        monoid([[0, 1], [0, 0]])


def test_set_functor_count_on_arrow():
    assert sum(1 for _ in set_functors(ordinal(1), 2)) == 11


def test_nat_on_discrete_is_product():
    C = discrete(range(2))
    Fs = list(set_functors(C, 2))
    for F in Fs[::3]:
        for G in Fs[::4]:
            expected = prod(G.size(x) ** F.size(x) for x in C.objects)
            assert len(nat_transformations(F, G)) == expected


def test_colimit_over_terminal_object():
    C = ordinal(2)
    for F in list(set_functors(C, 2))[::5]:
        assert colimit(F) == F.size(2)


def test_module_colimit_of_groupoid_is_coinvariants():
    G = groupoid_pair()
    for F in sample_module_functors(G, 5, max_rank=2):
        assert colimit(F).structure()[0] <= F.size(G.objects[0])


def test_presented_module_structure():
    assert PresentedModule(2, [[2, 0], [0, 3]]).structure() == (0, (6,))
    assert PresentedModule(3, [[1, 1, 0]]).structure() == (2, ())


def test_kan_along_identity_is_identity():
    C = ordinal(2)
    ident = CatFunctor.identity(C)
    for G in sample_module_functors(C, 6):
        ext = left_kan(ident, G).functor
        assert all(ext.values[x].isomorphic(G.values[x]) for x in C.objects)
    for G in list(set_functors(C, 2))[::7]:
        assert left_kan(ident, G).functor.values == G.values


@pytest.mark.parametrize("C", [ordinal(2), groupoid_pair(), discrete(range(2))], ids=lambda C: C.name)
def test_kan_to_point_is_colimit(C):
    P = terminal()
    (pt,), (one,) = P.objects, P.morphisms
    to_point = CatFunctor(C, P, {x: pt for x in C.objects}, {m: one for m in C.morphisms})
    for G in sample_module_functors(C, 6):
        assert left_kan(to_point, G).functor.values[pt].isomorphic(colimit(G))
    for G in list(set_functors(C, 2))[::5]:
        assert left_kan(to_point, G).functor.values[pt] == colimit(G)


def test_tiny_suite():
    cats = corpus("tiny")
    for tally in (check_end_nat(cats), check_coend_colim(cats), check_kan(cats, pairs=10),
                  check_cofinality(cats)):
        assert tally.passed, tally.to_json()
        assert tally.checked > 0


def test_twisted_arrow_of_arrow():
    T = ordinal(1).twisted_arrow(check=True)
    assert len(T.objects) == 3
    assert len(T.non_identities()) == 2
