"""Cartesian products, powers and the alpha_n subcomplexes of powers.

A generator of ``X_1 × ... × X_m`` is a tuple of simplices of equal
dimension sharing no common degeneracy position; every product simplex is a
joint degeneracy of exactly one such tuple.
"""
from __future__ import annotations

from .core import SimplicialError, SimplicialMap, SimplicialSet, repeats, surjections


def normalize(coords) -> tuple:
    """Product simplex with coordinates ``coords`` in (surjection, generator) form."""
    q = len(coords[0][0]) - 1
    common = set(range(q))
    for s, _ in coords:
        common &= set(repeats(s))
        if not common:
            break
    if not common:
        return tuple(range(q + 1)), tuple(coords)
    t, reps, c = [0], [0], 0
    for i in range(1, q + 1):
        if i - 1 not in common:
            c += 1
            reps.append(i)
        t.append(c)
    gen = tuple((tuple(s[i] for i in reps), g) for s, g in coords)
    return tuple(t), gen


class ProductSet(SimplicialSet):
    """Product with its factors recorded; generators are coordinate tuples."""

    factors: tuple

    def coordinate(self, x, k: int):
        s, g = x
        return self.factors[k].apply(g[k], s)


def product(*factors: SimplicialSet, truncation: int | None = None, name: str = "") -> ProductSet:
    if not factors:
        raise SimplicialError("product of no factors")
    Ns = {X.truncation for X in factors}
    if truncation is None:
        if len(Ns) != 1:
            raise SimplicialError(f"truncation levels differ: {sorted(Ns)}")
        truncation = Ns.pop()
    elif any(truncation > N for N in Ns):
        raise SimplicialError("requested truncation exceeds a factor's truncation")
    top = min(truncation, sum(max(X.generators) for X in factors))
    gens: dict = {}
    for n in range(top + 1):
        layer = []

        def grow(k, acc, common):
            if k == len(factors):
                if not common:
                    layer.append(tuple(acc))
                return
            X = factors[k]
            for p, gs in X.generators.items():
                if p > n:
                    break
                for s in surjections(n, p):
                    c2 = common & set(repeats(s))
                    for g in gs:
                        acc.append((s, g))
                        grow(k + 1, acc, c2)
                        acc.pop()

        grow(0, [], set(range(n)))
        if layer:
            gens[n] = layer
    faces = {}
    for n, gs in gens.items():
        if n == 0:
            continue
        for g in gs:
            faces[g] = tuple(normalize([X.face(x, i) for X, x in zip(factors, g)]) for i in range(n + 1))
    bp = None
    if all(X.basepoint is not None for X in factors):
        bp = tuple(((0,), X.basepoint) for X in factors)
    P = ProductSet(gens, faces, truncation, bp, name or " x ".join(X.name or "?" for X in factors),
                   check=False)
    P.factors = tuple(factors)
    return P


def power(X: SimplicialSet, m: int, truncation: int | None = None) -> ProductSet:
    if m == 0:
        P = ProductSet({0: [()]}, {}, X.truncation if truncation is None else truncation, (), "pt", check=False)
        P.factors = ()
        return P
    return product(*([X] * m), truncation=truncation, name=f"({X.name})^{m}")


def off_base(X: SimplicialSet, gen) -> int:
    """Number of coordinates of a product generator not degenerate on the basepoint."""
    return sum(1 for _, g in gen if g != X.basepoint)


def alpha_subcomplex(X: SimplicialSet, m: int, n: int, truncation: int | None = None) -> ProductSet:
    """Tuples in X^m with at most n coordinates away from the basepoint."""
    if not X.is_reduced:
        raise SimplicialError("alpha_subcomplex needs a reduced pointed simplicial set")
    if m < 1 or n < 0:
        raise SimplicialError("need m >= 1 and n >= 0")
    P = power(X, m, truncation)
    A = P.subcomplex(lambda g: off_base(X, g) <= n, name=f"alpha_{n}({X.name}^{m})")
    out = ProductSet(A.generators, A.faces, A.truncation, A.basepoint, A.name, check=False)
    out.factors = P.factors
    return out


def projection(P: ProductSet, Q: ProductSet, coords) -> SimplicialMap:
    """Map P -> Q keeping the listed coordinates of P (in order)."""
    images = {}
    for g in P.dim:
        n = P.dim[g]
        if not coords:
            images[g] = (tuple([0] * (n + 1)), ())
        else:
            images[g] = normalize([g[k] for k in coords])
    return SimplicialMap(P, Q, images, check=False)


def product_map(maps, P: ProductSet, Q: ProductSet) -> SimplicialMap:
    """Coordinatewise map f_1 × ... × f_m."""
    images = {g: normalize([f(x) for f, x in zip(maps, g)]) for g in P.dim}
    return SimplicialMap(P, Q, images, check=False)
