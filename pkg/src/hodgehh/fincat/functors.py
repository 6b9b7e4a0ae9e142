"""Functors between finite categories and functors into finite sets or modules."""
from __future__ import annotations

from itertools import product as iproduct

from ..rings import ZZ, Ring
from .category import CategoryError, FinCat
from .modules import PresentedModule, eye, kron, matmul

SET, MOD = "set", "mod"


class CatFunctor:
    """Functor i: I -> J between finite categories."""

    def __init__(self, source: FinCat, target: FinCat, obj: dict, mor: dict, check: bool = True):
        self.source, self.target, self.obj, self.mor = source, target, obj, mor
        if check:
            self.validate()

    def validate(self) -> None:
        I, J = self.source, self.target
        for m in I.morphisms:
            im = self.mor[m]
            if J.source[im] != self.obj[I.source[m]] or J.target[im] != self.obj[I.target[m]]:
                raise CategoryError(f"functor breaks the endpoints of {m!r}")
        for x in I.objects:
            if self.mor[I.identity(x)] != J.identity(self.obj[x]):
                raise CategoryError(f"functor does not preserve the identity of {x!r}")
        for g, f in I.composable():
            if self.mor[I.compose(g, f)] != J.compose(self.mor[g], self.mor[f]):
                raise CategoryError(f"functor does not preserve {g!r} ∘ {f!r}")

    def op(self) -> "CatFunctor":
        return CatFunctor(self.source.op(), self.target.op(), self.obj, self.mor, check=False)

    @classmethod
    def identity(cls, C: FinCat) -> "CatFunctor":
        return cls(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, check=False)


class FunctorTable:
    """Functor from a finite category into finite sets or into k-modules.

    Set values are sizes ``n`` (elements ``0..n-1``) and morphisms go to value
    tuples.  Module values are :class:`PresentedModule` objects (free when no
    relations) and morphisms go to matrices acting on generators (rows index
    target generators).
    """

    def __init__(self, domain: FinCat, kind: str, values: dict, maps: dict, ring: Ring = ZZ,
                 check: bool = True):
        if kind not in (SET, MOD):
            raise ValueError(f"unknown codomain tag {kind!r}")
        self.domain, self.kind, self.ring = domain, kind, ring
        if kind == MOD:
            values = {x: v if isinstance(v, PresentedModule) else PresentedModule.free(v, ring)
                      for x, v in values.items()}
        self.values, self.maps = values, maps
        if check:
            self.validate()

    def size(self, x) -> int:
        v = self.values[x]
        return v if self.kind == SET else v.ngens

    def apply(self, m, x):
        """Image of an element (set) or generator-coordinate vector (module)."""
        M = self.maps[m]
        if self.kind == SET:
            return M[x]
        red = self.ring.reduce
        return [red(sum(M[i][j] * x[j] for j in range(len(x)) if x[j])) for i in range(len(M))]

    def compose_maps(self, g_map, f_map, a, b, c):
        if self.kind == SET:
            return tuple(g_map[v] for v in f_map)
        return matmul(g_map, f_map, self.size(c), self.size(b), self.size(a), self.ring.reduce)

    def identity_map(self, x):
        n = self.size(x)
        return tuple(range(n)) if self.kind == SET else eye(n)

    def _norm(self, M, x, y):
        if self.kind == SET:
            return tuple(M)
        red = self.ring.reduce
        return tuple(tuple(red(self.ring(M[i][j])) for j in range(self.size(x))) for i in range(self.size(y)))

    def validate(self) -> None:
        C = self.domain
        for m in C.morphisms:
            M = self.maps.get(m)
            a, b = C.source[m], C.target[m]
            if M is None:
                raise CategoryError(f"no value on morphism {m!r}")
            if self.kind == SET:
                if len(M) != self.size(a) or any(not 0 <= v < self.size(b) for v in M):
                    raise CategoryError(f"set map on {m!r} has the wrong shape")
            elif len(M) != self.size(b) or any(len(row) != self.size(a) for row in M):
                raise CategoryError(f"matrix on {m!r} has the wrong shape")
        for x in C.objects:
            if self._norm(self.maps[C.identity(x)], x, x) != self._norm(self.identity_map(x), x, x):
                raise CategoryError(f"identity of {x!r} not preserved")
        for g, f in C.composable():
            a, b, c = C.source[f], C.target[f], C.target[g]
            lhs = self._norm(self.maps[C.compose(g, f)], a, c)
            rhs = self._norm(self.compose_maps(self.maps[g], self.maps[f], a, b, c), a, c)
            if lhs != rhs:
                raise CategoryError(f"composite {g!r} ∘ {f!r} not preserved")

    def pullback(self, i: CatFunctor) -> "FunctorTable":
        """F ∘ i."""
        return FunctorTable(i.source, self.kind, {x: self.values[i.obj[x]] for x in i.source.objects},
                            {m: self.maps[i.mor[m]] for m in i.source.morphisms}, self.ring, check=False)

    def __repr__(self):
        return f"FunctorTable({self.kind} on {self.domain.name or '?'}: {self.values})"


def constant(C: FinCat, kind: str, value, ring: Ring = ZZ) -> FunctorTable:
    n = value if kind == SET or isinstance(value, int) else value.ngens
    ident = tuple(range(n)) if kind == SET else eye(n)
    return FunctorTable(C, kind, {x: value for x in C.objects}, {m: ident for m in C.morphisms}, ring)


class Bifunctor(FunctorTable):
    """Functor on I^op × I; morphism ``(f, g)`` with ``f: a' -> a`` and ``g: b -> b'``
    in I acts ``T(a, b) -> T(a', b')``."""

    def __init__(self, base: FinCat, kind: str, values: dict, maps: dict, ring: Ring = ZZ,
                 check: bool = True):
        self.base = base
        super().__init__(base.op().product(base), kind, values, maps, ring, check)

    def act(self, f, g):
        return self.maps[(f, g)]


def _functions(n: int, m: int):
    return list(iproduct(range(m), repeat=n))


def hom_bifunctor(F: FunctorTable, G: FunctorTable) -> Bifunctor:
    """(a, b) ↦ Hom(F(a), G(b)) for set-valued F and G on the same category."""
    if F.kind != SET or G.kind != SET or not F.domain.same_as(G.domain):
        raise CategoryError("hom_bifunctor needs set-valued functors on one category")
    I = F.domain
    elems = {(a, b): _functions(F.size(a), G.size(b)) for a in I.objects for b in I.objects}
    index = {k: {phi: n for n, phi in enumerate(v)} for k, v in elems.items()}
    values = {k: len(v) for k, v in elems.items()}
    maps = {}
    for f in I.morphisms:
        a2, a = I.source[f], I.target[f]
        Ff = F.maps[f]
        for g in I.morphisms:
            b, b2 = I.source[g], I.target[g]
            Gg = G.maps[g]
            tgt = index[(a2, b2)]
            maps[(f, g)] = tuple(tgt[tuple(Gg[phi[Ff[x]]] for x in range(F.size(a2)))] for phi in elems[(a, b)])
    T = Bifunctor(I, SET, values, maps, check=False)
    T.elements = elems
    return T


def tensor_bifunctor(G: FunctorTable, F: FunctorTable) -> Bifunctor:
    """(a, b) ↦ G(a) ⊗ F(b) for G on I^op and F on I (both module-valued)."""
    from .modules import tensor
    I = F.domain
    values = {(a, b): tensor(G.values[a], F.values[b]) for a in I.objects for b in I.objects}
    maps = {}
    for f in I.morphisms:
        a2, a = I.source[f], I.target[f]
        for g in I.morphisms:
            b, b2 = I.source[g], I.target[g]
            maps[(f, g)] = kron(G.maps[f], F.maps[g], G.size(a2), G.size(a), F.size(b2), F.size(b))
    return Bifunctor(I, MOD, values, maps, F.ring, check=False)
