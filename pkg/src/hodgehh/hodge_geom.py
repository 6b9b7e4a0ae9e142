"""Truncated powers of a pointed space, their layers, and the symmetric-group
and Adams actions on layer homology.

``truncated_power(X, m, n)`` is the homotopy limit over the poset of subsets
V ⊆ {0..m-1} with |V| <= n of the diagram V ↦ C_*(X^V), whose structure maps
forget coordinates.  For n >= m the poset has a top element and the limit is
C_*(X^m).  The n-th layer is the fiber of the restriction from bound n to
bound n - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .chainalg import (ChainComplex, ChainMap, HomologyRecord, Totalization, comparison_to_holim, fiber_map,
                       induced_map, mapping_fiber, poset_holim, subsets_upto)
from .chainalg.smith import determinant, matmul, smith
from .rings import ZZ, Ring
from .simplicial import (SimplicialMap, SimplicialSet, alpha_subcomplex, degree_map, power, product_map,
                         projection, standard_circle)
from .simplicial.core import identity_map

DEFAULT_ARITY_BUDGET = 4


class ArityBudgetExceeded(RuntimeError):
    pass


class GeometryError(ValueError):
    pass


def _top(P) -> int:
    return max(P.generators) + 1


class _Powers:
    """Cache of X^k and their normalized chains for k = 0..m."""

    def __init__(self, X: SimplicialSet, m: int, ring: Ring):
        self.X, self.ring = X, ring
        self.sets = [power(X, k) for k in range(m + 1)]
        top = _top(self.sets[m])
        self.top = top
        self.chains = [P.chains(ring, top) for P in self.sets]


def _subset_diagram(pw: _Powers, m: int, n: int):
    elements = subsets_upto(m, n)
    values = {V: pw.chains[len(V)] for V in elements}
    maps = {}
    for y in elements:
        ys = sorted(y)
        for x in elements:
            if x < y:
                pos = [ys.index(v) for v in sorted(x)]
                f = projection(pw.sets[len(y)], pw.sets[len(x)], pos)
                maps[(y, x)] = f.chain_map(pw.chains[len(y)], pw.chains[len(x)], pw.ring, check=False)
    return elements, values, maps


def _less(a, b) -> bool:
    return a < b


@dataclass
class TruncatedPower:
    base: SimplicialSet
    arity: int
    bound: int
    total: Totalization
    source: ChainComplex
    comparison: ChainMap
    powers: object = field(repr=False, default=None)

    @property
    def complex(self) -> ChainComplex:
        return self.total.complex

    def homology(self) -> list:
        return nonzero_records(self.complex)


def truncated_power(X: SimplicialSet, m: int, n: int, arity_budget: int = DEFAULT_ARITY_BUDGET,
                    ring: Ring = ZZ, require_reduced: bool = True, _powers: _Powers | None = None
                    ) -> TruncatedPower:
    if m > arity_budget:
        raise ArityBudgetExceeded(f"arity {m} exceeds the budget {arity_budget}")
    if m < 1 or n < 0:
        raise GeometryError("need m >= 1 and n >= 0")
    if require_reduced and not X.is_reduced:
        raise GeometryError("truncated_power needs a reduced pointed simplicial set")
    pw = _powers or _Powers(X, m, ring)
    elements, values, maps = _subset_diagram(pw, m, n)
    T = poset_holim(elements, _less, values, maps, check=False)
    projs = {}
    for V in elements:
        f = projection(pw.sets[m], pw.sets[len(V)], sorted(V))
        projs[V] = f.chain_map(pw.chains[m], pw.chains[len(V)], ring, check=False)
    comp = comparison_to_holim(T, pw.chains[m], projs)
    return TruncatedPower(X, m, n, T, pw.chains[m], comp, pw)


def nonzero_records(C: ChainComplex) -> list:
    """Homology records of all degrees with nonzero homology."""
    out = []
    for k in C.degrees:
        r = C.homology(k)
        if r.betti or r.torsion:
            out.append(HomologyRecord(k, r.betti, r.torsion))
    return out


def alpha_records(X: SimplicialSet, m: int, n: int) -> list:
    A = alpha_subcomplex(X, m, n)
    return nonzero_records(A.chains(ZZ, _top(A)))


def alpha_model_check(X: SimplicialSet, m: int, n: int) -> dict:
    """Full homology-record comparison of the holim model and the alpha_n model."""
    tp = truncated_power(X, m, n)
    a, b = tp.homology(), alpha_records(X, m, n)
    return {"arity": m, "bound": n, "holim": a, "alpha": b, "equal": a == b}


# layers ----------------------------------------------------------------------

@dataclass
class LayerComplex:
    base: SimplicialSet
    arity: int
    level: int
    upper: TruncatedPower
    lower: TruncatedPower
    restriction: ChainMap
    complex: ChainComplex

    def homology(self) -> list:
        return nonzero_records(self.complex)


def hodge_layer(X: SimplicialSet, m: int, n: int, require_reduced: bool = True,
                arity_budget: int = DEFAULT_ARITY_BUDGET) -> LayerComplex:
    if not 1 <= n <= m:
        raise GeometryError("need 1 <= n <= m")
    pw = _Powers(X, m, ZZ)
    up = truncated_power(X, m, n, arity_budget, require_reduced=require_reduced, _powers=pw)
    lo = truncated_power(X, m, n - 1, arity_budget, require_reduced=require_reduced, _powers=pw)
    z = up.total.restriction_to(lo.total)
    F, _, _ = mapping_fiber(z)
    return LayerComplex(X, m, n, up, lo, z, F)


def _tot_map(T1: Totalization, T2: Totalization, relabel, value_map) -> ChainMap:
    """Chain map of totalizations from a map of diagrams.

    ``relabel`` sends poset elements of the first diagram to the second;
    ``value_map(V)`` is the chain map D1(V) -> D2(relabel(V)).
    """
    maps = {}
    cache = {}
    for t, es in T1.basis.items():
        idx = T2.index.get(t, {})
        cols = {}
        for k, (ch, j) in enumerate(es):
            V = ch[-1]
            if V not in cache:
                cache[V] = value_map(V)
            q = t + len(ch) - 1
            new = tuple(relabel(x) for x in ch)
            col = {idx[(new, i)]: v for i, v in cache[V].apply({j: 1}, q).items()}
            if col:
                cols[k] = col
        maps[t] = cols
    return ChainMap(T1.complex, T2.complex, maps, check=False)


def _layer_map(L1: LayerComplex, L2: LayerComplex, relabel, value_map_for) -> ChainMap:
    """Map of layers from compatible maps of the bound-n and bound-(n-1) diagrams."""
    h_up = _tot_map(L1.upper.total, L2.upper.total, relabel, value_map_for(L1.upper, L2.upper))
    h_lo = _tot_map(L1.lower.total, L2.lower.total, relabel, value_map_for(L1.lower, L2.lower))
    return fiber_map(L1.restriction, L2.restriction, L1.complex, L2.complex, h_up, h_lo)


def _permuted_chain_map(pw: _Powers, V, perm) -> ChainMap:
    """C_*(X^V) -> C_*(X^{perm V}) moving the coordinate at v to perm[v]."""
    k = len(V)
    src = sorted(V)
    tgt = sorted(perm[v] for v in V)
    where = [tgt.index(perm[v]) for v in src]
    P = pw.sets[k]
    images = {}
    for g in P.dim:
        new = [None] * k
        for i, c in enumerate(g):
            new[where[i]] = c
        images[g] = (identity_map(P.dim[g]), tuple(new))
    f = SimplicialMap(P, P, images, check=False)
    return f.chain_map(pw.chains[k], pw.chains[k], pw.ring, check=False)


def symmetric_chain_map(layer: LayerComplex, perm) -> ChainMap:
    perm = tuple(perm)
    if sorted(perm) != list(range(layer.arity)):
        raise GeometryError(f"{perm!r} is not a permutation of {layer.arity} letters")

    def relabel(V):
        return frozenset(perm[v] for v in V)

    def vm(tp1, tp2):
        return lambda V: _permuted_chain_map(tp1.powers, V, perm)

    return _layer_map(layer, layer, relabel, vm)


def symmetric_action(layer: LayerComplex, perm, degree: int | None = None):
    """Matrix of the permutation on layer homology in the given degree (default: the level)."""
    f = symmetric_chain_map(layer, perm)
    return induced_map(f, layer.level if degree is None else degree)


def adams_layer_map(layer: LayerComplex, r: int, degree: int | None = None):
    """Matrix of the degree-r self-map of the circle on layer homology.

    With C_r --w--> S^1 an equivalence and C_r --c--> S^1 of degree r, the
    operator is H(c^m) H(w^m)^{-1}, computed through the layer of C_r.
    """
    X = layer.base
    if X.nondegenerate_counts() != standard_circle(X.truncation).nondegenerate_counts() or not X.is_reduced:
        raise GeometryError("Adams maps are defined here for the circle only")
    deg = layer.level if degree is None else degree
    if r == 1:
        b = layer.complex.homology(deg).betti
        return [[Fraction(int(i == j)) for j in range(b)] for i in range(b)]
    D = degree_map(r, X.truncation)
    src = hodge_layer(D.space, layer.arity, layer.level, require_reduced=False)

    def vm_for(f):
        def vm(tp1, tp2):
            def one(V):
                k = len(V)
                if k == 0:
                    return ChainMap(tp1.powers.chains[0], tp2.powers.chains[0], {0: {0: {0: 1}}}, check=False)
                P1, P2 = tp1.powers.sets[k], tp2.powers.sets[k]
                g = product_map([f] * k, P1, P2)
                return g.chain_map(tp1.powers.chains[k], tp2.powers.chains[k], ZZ, check=False)
            return one
        return vm

    c = _layer_map(src, layer, lambda V: V, vm_for(D.map))
    w = _layer_map(src, layer, lambda V: V, vm_for(D.equivalence))
    C, W = induced_map(c, deg), induced_map(w, deg)
    Winv = _inverse(W)
    return [[Fraction(sum(Fraction(C[i][k]) * Winv[k][j] for k in range(len(W)))) for j in range(len(W))]
            for i in range(len(C))]


def _inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            raise GeometryError("matrix is not invertible")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def sign_of(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        if n % 2 == 0:
            s = -s
    return s


# corollary checks --------------------------------------------------------------

def left_inverse(M) -> list | None:
    """An integral matrix L with L M = I, or None when no such L exists."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    if cols == 0:
        return []
    if rows < cols:
        return None
    S = smith(M, ZZ)
    if S.rank != cols or any(abs(d) != 1 for d in S.diagonal):
        return None
    # U M V = [D; 0] with D = diag(±1): L = V D^{-1} [I 0] U
    Dinv = [[S.diagonal[i] if i == j else 0 for j in range(rows)] for i in range(cols)]
    L = matmul(S.V, matmul(Dinv, S.U))
    assert matmul(L, M) == [[int(i == j) for j in range(cols)] for i in range(cols)]
    return L


def inclusion_chain_map(A, P, CA: ChainComplex, CP: ChainComplex) -> ChainMap:
    maps = {}
    for p in CA.ranks:
        maps[p] = {k: {P.index[g]: 1} for k, g in enumerate(CA.labels[p])}
    return ChainMap(CA, CP, maps)


def retract_check(X: SimplicialSet, m: int, n: int) -> dict:
    """H_*(alpha_n) -> H_*(X^m) is a split injection with an integral left inverse,
    and the comparison to the truncated power is an isomorphism on homology."""
    tp = truncated_power(X, m, n)
    P = tp.powers.sets[m]
    A = alpha_subcomplex(X, m, n)
    CA = A.chains(ZZ, tp.powers.top)
    inc = inclusion_chain_map(A, P, CA, tp.source)
    comp = tp.comparison.compose(inc)
    degrees = {}
    ok = True
    for k in range(tp.powers.top):
        M = induced_map(inc, k)
        L = left_inverse(M)
        C = induced_map(comp, k)
        iso = len(C) == (len(C[0]) if C else 0) and (not C or abs(determinant(C, ZZ)) == 1)
        torsion_free = not CA.homology(k).torsion
        good = L is not None and iso and torsion_free
        ok = ok and good
        degrees[k] = {"matrix": M, "left_inverse": L, "comparison_iso": iso, "ok": good}
    return {"arity": m, "bound": n, "degrees": degrees, "ok": ok}


def connectivity_check(X: SimplicialSet, m: int, n: int) -> dict:
    """H_i of the fiber of C_*(X^m) -> truncated power vanishes for i <= n."""
    tp = truncated_power(X, m, n)
    F, _, _ = mapping_fiber(tp.comparison)
    vanish = {i: F.homology(i) for i in range(min(F.degrees, default=0), n + 1)}
    ok = all(r.betti == 0 and not r.torsion for r in vanish.values())
    return {"arity": m, "bound": n, "records": list(vanish.values()), "ok": ok}


def rank_ladder(n: int, X: SimplicialSet | None = None) -> dict:
    """For i < n: H_i of the bound-n and bound-(n-1) truncations of X^n are free
    of rank C(n, i), and the restriction is an integral isomorphism."""
    X = X or standard_circle()
    layer = hodge_layer(X, n, n)
    steps = {}
    ok = True
    for i in range(n):
        a, b = layer.upper.complex.homology(i), layer.lower.complex.homology(i)
        Z = induced_map(layer.restriction, i)
        det = determinant(Z, ZZ) if Z else 1
        good = (a.betti == b.betti == comb(n, i) and not a.torsion and not b.torsion
                and len(Z) == comb(n, i) and abs(det) == 1)
        ok = ok and good
        steps[i] = {"rank_upper": a.betti, "rank_lower": b.betti, "det": det, "ok": good}
    return {"n": n, "steps": steps, "ok": ok}


def layer_report(X: SimplicialSet, space: str, m: int, n: int, adams_r=()) -> dict:
    """LayerReport payload: homology, sign check on transpositions, Adams matrices."""
    from itertools import permutations

    L = hodge_layer(X, m, n)
    hom = L.homology()
    sign_ok = True
    b = L.complex.homology(n).betti
    if m == n and b:
        for perm in permutations(range(m)):
            M = symmetric_action(L, perm)
            if M != [[sign_of(perm) if i == j else 0 for j in range(b)] for i in range(b)]:
                sign_ok = False
    adams = []
    for r in adams_r:
        A = adams_layer_map(L, r)
        adams.append({"r": r, "matrix": [[str(x) for x in row] for row in A]})
    return {
        "space": space,
        "arity": m,
        "level": n,
        "homology": [r.to_json() for r in hom],
        "sign_check": "pass" if sign_ok else "fail",
        "adams": adams,
    }


__all__ = ["TruncatedPower", "LayerComplex", "ArityBudgetExceeded", "GeometryError", "truncated_power",
           "hodge_layer", "symmetric_action", "symmetric_chain_map", "adams_layer_map", "nonzero_records",
           "alpha_records", "alpha_model_check", "retract_check", "connectivity_check", "rank_ladder",
           "left_inverse", "sign_of", "layer_report", "DEFAULT_ARITY_BUDGET"]
