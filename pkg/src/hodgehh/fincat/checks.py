"""Property checks of the end/coend/Kan-extension identities over the category corpus."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .category import FinCat
from .enumerate import category_functors, linearize, sample_module_functors, sample_set_functors, small_categories
from .functors import MOD, CatFunctor, FunctorTable, constant, hom_bifunctor, tensor_bifunctor
from .limits import coend_bifunctor, colimit, end_as_families, end_bifunctor, end_via_twisted, left_kan, nat_transformations

CORPUS_SIZES = {"tiny": (2, 2), "small": (3, 3)}


@dataclass
class CheckTally:
    name: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    def record(self, ok: bool, detail) -> None:
        self.checked += 1
        if not ok:
            self.mismatches.append(detail)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"check": self.name, "instances": self.checked, "mismatches": len(self.mismatches),
                "first_mismatches": [str(m) for m in self.mismatches[:5]]}


def corpus(size: str = "small") -> list:
    objs, arrows = CORPUS_SIZES[size]
    return small_categories(objs, arrows)


def check_end_nat(cats, per_category: int = 6) -> CheckTally:
    """|end Hom(F, G)| = |Nat(F, G)| and the identification of families is a bijection."""
    tally = CheckTally("end_equals_nat")
    for C in cats:
        Fs = sample_set_functors(C, per_category)
        for F in Fs:
            for G in Fs:
                T = hom_bifunctor(F, G)
                nat = nat_transformations(F, G)
                end = end_bifunctor(T)
                fams = end_as_families(T, end)
                ok = len(end) == len(nat) and sorted(fams) == nat and len(set(fams)) == len(fams)
                ok = ok and end_via_twisted(T) == end
                tally.record(ok, (C.name, F.values, G.values))
    return tally


def check_coend_colim(cats, per_category: int = 8) -> CheckTally:
    """coend(1 ⊗ F) ≅ colim F."""
    tally = CheckTally("coend_of_unit_equals_colim")
    for C in cats:
        unit = constant(C.op(), MOD, 1)
        for F in sample_module_functors(C, per_category):
            lhs = coend_bifunctor(tensor_bifunctor(unit, F))
            tally.record(lhs.isomorphic(colimit(F)), (C.name, F.values))
    return tally


def check_kan(cats, pairs: int = 40, per_pair: int = 3, functors_per_pair: int = 2) -> CheckTally:
    """coend(i*F ⊗ G) ≅ coend(F ⊗ i_! G) for functors i: I -> J, G on I, F on J^op."""
    tally = CheckTally("kan_coend_adjunction")
    small = [C for C in cats if len(C.morphisms) <= 5]
    chosen = []
    for I in small:
        for J in small:
            chosen.append((I, J))
    step = max(1, len(chosen) // pairs)
    for I, J in chosen[::step][:pairs]:
        for i in category_functors(I, J, limit=functors_per_pair):
            Gs = sample_module_functors(I, per_pair, seed=1)
            Fs = sample_module_functors(J.op(), per_pair, seed=2)
            for G in Gs:
                ext = left_kan(i, G).functor
                for F in Fs:
                    lhs = coend_bifunctor(tensor_bifunctor(F.pullback(i.op()), G))
                    rhs = coend_bifunctor(tensor_bifunctor(F, ext))
                    tally.record(lhs.isomorphic(rhs), (I.name, J.name, G.values, F.values))
    return tally


def source_pullback(F: FunctorTable) -> FunctorTable:
    """F ∘ s on Tw(I)^op, where s sends an arrow a -> b to its source a."""
    I = F.domain
    Tw = I.twisted_arrow().op()
    values = {f: F.values[I.source[f]] for f in Tw.objects}
    maps = {(f, u, v): F.maps[u] for (f, u, v) in Tw.morphisms}
    return FunctorTable(Tw, F.kind, values, maps, F.ring, check=False)


def check_cofinality(cats, per_category: int = 4) -> CheckTally:
    """colim over Tw(I)^op of F ∘ s equals colim F."""
    tally = CheckTally("source_projection_cofinal")
    for C in cats:
        for F in sample_module_functors(C, per_category, seed=3):
            tally.record(colimit(source_pullback(F)).isomorphic(colimit(F)), (C.name, F.values))
    return tally


def run_categorical_suite(size: str = "small") -> dict:
    start = time.perf_counter()
    cats = corpus(size)
    tallies = [check_end_nat(cats), check_kan(cats), check_coend_colim(cats), check_cofinality(cats)]
    return {"corpus": size, "categories": len(cats), "checks": [t.to_json() for t in tallies],
            "passed": all(t.passed for t in tallies), "seconds": round(time.perf_counter() - start, 3)}


def simplicial_corpus() -> list:
    """Constructor corpus: simplices, spheres, a torus, an alpha subcomplex,
    degree-map models and nerves of the tiny category corpus (truncated at 7)."""
    from ..simplicial import (alpha_subcomplex, degree_map, nerve, product, standard_circle, standard_simplex,
                              standard_sphere)

    out = [(f"simplex{k}", standard_simplex(k, 7)) for k in range(3)]
    out += [("circle", standard_circle(7)), ("sphere2", standard_sphere(2, 7))]
    out += [("torus", product(standard_circle(7), standard_circle(7))),
            ("alpha1_torus", alpha_subcomplex(standard_circle(7), 2, 1))]
    out += [(f"degree{r}", degree_map(r, 7).space) for r in (-2, 2, 3)]
    out += [(f"nerve_{C.name}", nerve(C, 7, check=False)) for C in corpus("tiny")]
    return out


def run_twisted_suite(top: int = 3, comparison_top: int = 2) -> dict:
    """Identities of Tw(X) through ``top`` on the constructor corpus, identities
    through ``comparison_top`` for nerves of every small category, and the
    comparison with the nerve of the classical twisted arrow category."""
    from ..simplicial import SimplicialError, check_twisted, nerve, nerve_comparison, standard_simplex, twisted

    start = time.perf_counter()
    ident = CheckTally("twisted identities")
    for name, X in simplicial_corpus():
        try:
            check_twisted(twisted(X, top), top)
            ident.record(True, name)
        except SimplicialError as e:
            ident.record(False, (name, str(e)))
    comp = CheckTally("nerve comparison")
    for C in corpus("small"):
        T = twisted(nerve(C, 2 * comparison_top + 1, check=False), comparison_top)
        try:
            check_twisted(T, comparison_top)
            ident.record(True, C.name)
        except SimplicialError as e:
            ident.record(False, (C.name, str(e)))
        comp.record(nerve_comparison(C, comparison_top, T)[1], C.name)
    T = twisted(standard_simplex(1, 11), 5)
    counts = [T.count(n) for n in range(6)]
    count_ok = counts == [2 * n + 3 for n in range(6)]
    return {"identities": ident.to_json(), "comparison": comp.to_json(), "delta1_counts": counts,
            "passed": ident.passed and comp.passed and count_ok, "seconds": round(time.perf_counter() - start, 3)}
