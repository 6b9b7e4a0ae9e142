"""The filtration by number of augmentation-ideal factors, its layers, and the
shuffle product on the circle case."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..chainalg import ChainComplex, ChainMap
from .construction import LodayComplex


@dataclass
class FiltrationStage:
    level: int
    complex: ChainComplex      # F_n
    keep: dict                 # degree -> indices of F_n inside L
    inclusion: ChainMap        # F_n -> L
    from_previous: ChainMap | None  # F_{n-1} -> F_n


def _keep(L: LodayComplex, pred) -> dict:
    return {q: [k for k, t in enumerate(L.tags[q]) if pred(t)] for q in L.tags}


def _stage_complex(L: LodayComplex, keep: dict) -> ChainComplex:
    C = L.complex.restrict(keep)
    C.tags = {q: [L.tags[q][k] for k in ks] for q, ks in keep.items()}
    return C


def weight_filtration(L: LodayComplex, n: int) -> FiltrationStage:
    """F_n: span of basis tensors with at most n augmentation-ideal factors."""
    keep = _keep(L, lambda t: t <= n)
    F = _stage_complex(L, keep)
    incl = ChainMap(F, L.complex, {q: {j: {k: 1} for j, k in enumerate(ks)} for q, ks in keep.items()})
    prev = None
    if n > 0:
        keep0 = _keep(L, lambda t: t <= n - 1)
        F0 = _stage_complex(L, keep0)
        pos = {q: {k: j for j, k in enumerate(ks)} for q, ks in keep.items()}
        prev = ChainMap(F0, F, {q: {j: {pos[q][k]: 1} for j, k in enumerate(ks)} for q, ks in keep0.items()})
    return FiltrationStage(n, F, keep, incl, prev)


def weight_layer(L: LodayComplex, n: int) -> ChainComplex:
    """gr_n = F_n / F_{n-1}: basis tensors with exactly n ideal factors."""
    return _stage_complex(L, _keep(L, lambda t: t == n))


def quotient_above(L: LodayComplex, n: int) -> ChainComplex:
    """L / F_n."""
    return _stage_complex(L, _keep(L, lambda t: t > n))


# circle-specific Hochschild form --------------------------------------------------

def circle_positions(L: LodayComplex, q: int) -> list:
    """Simplex indices of X_q in Hochschild order: basepoint, then the simplex
    whose only non-repeat position is i - 1, for i = 1..q."""
    X = L.space
    if X.nondegenerate_counts(1) != (1, 1) or any(X.generators.get(p) for p in range(2, X.truncation + 1)):
        raise ValueError("shuffle products are implemented for the standard circle only")
    out = []
    for i in range(q + 1):
        s = tuple(0 if j < i else 1 for j in range(q + 1)) if i else tuple([0] * (q + 1))
        gen = "e1" if i else X.basepoint
        out.append(L.simplices[q].index((s, gen)))
    return out


def to_hochschild(L: LodayComplex, q: int, k: int) -> tuple:
    """Basis element k of degree q as (a_0, a_1, ..., a_q) (basis indices, 0 = unit)."""
    pos = circle_positions(L, q)
    where = {t: b for t, b in L.labels[q][k]}
    return tuple(where.get(p, 0) for p in pos)


def from_hochschild(L: LodayComplex, word: tuple):
    q = len(word) - 1
    pos = circle_positions(L, q)
    label = tuple(sorted((pos[i], b) for i, b in enumerate(word) if b))
    return L.complex_lookup(q).get(label)


def _lookup(L: LodayComplex, q: int) -> dict:
    cache = L.__dict__.setdefault("_lookup", {})
    if q not in cache:
        cache[q] = {lab: k for k, lab in enumerate(L.labels[q])}
    return cache[q]


LodayComplex.complex_lookup = _lookup


def shuffles(p: int, q: int):
    """(p, q)-shuffles as (sign, positions of the first block)."""
    for first in combinations(range(p + q), p):
        inv = 0
        fs = set(first)
        seen_second = 0
        for i in range(p + q):
            if i in fs:
                inv += seen_second
            else:
                seen_second += 1
        yield (-1) ** inv, first


def shuffle_product(L: LodayComplex, p: int, i: int, q: int, j: int) -> dict:
    """Product of basis elements i (degree p) and j (degree q): a vector in degree p + q.

    (a_0 ⊗ a) * (b_0 ⊗ b) = Σ_σ sgn(σ) a_0 b_0 ⊗ σ(a, b).  Terms outside the
    stored range (degree or weight) are dropped.
    """
    R = L.algebra
    red = R.ring.reduce
    a, b = to_hochschild(L, p, i), to_hochschild(L, q, j)
    if p + q not in L.labels:
        return {}
    out: dict = {}
    for c0, coef in R.product(a[0], b[0]).items():
        for sign, first in shuffles(p, q):
            word = [0] * (p + q)
            ia, ib = iter(a[1:]), iter(b[1:])
            fs = set(first)
            for t in range(p + q):
                word[t] = next(ia) if t in fs else next(ib)
            k = from_hochschild(L, (c0,) + tuple(word))
            if k is None:
                continue
            v = red(out.get(k, 0) + sign * coef)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def leibniz_defect(L: LodayComplex, p: int, i: int, q: int, j: int) -> dict:
    """d(x*y) - d(x)*y - (-1)^p x*d(y); zero when the product is a chain map."""
    C = L.complex
    red = L.algebra.ring.reduce
    if p + q > L.max_degree + 1:
        return {}
    out = dict(C.boundary(shuffle_product(L, p, i, q, j), p + q))
    for k, c in C.boundary({i: 1}, p).items():
        for t, v in shuffle_product(L, p - 1, k, q, j).items():
            out[t] = red(out.get(t, 0) - c * v)
    for k, c in C.boundary({j: 1}, q).items():
        for t, v in shuffle_product(L, p, i, q - 1, k).items():
            out[t] = red(out.get(t, 0) - (-1) ** p * c * v)
    return {t: v for t, v in out.items() if v}


def multiplicativity_check(L: LodayComplex, total_degree: int = 4) -> dict:
    """Check that x * y lies in F_{a+b} for x in F_a, y in F_b, on basis pairs."""
    pairs, bad = 0, []
    top = min(total_degree, max(L.labels))
    for p in range(top + 1):
        for q in range(top - p + 1):
            for i, ti in enumerate(L.tags.get(p, [])):
                for j, tj in enumerate(L.tags.get(q, [])):
                    pairs += 1
                    prod = shuffle_product(L, p, i, q, j)
                    if any(L.tags[p + q][k] > ti + tj for k in prod):
                        bad.append((p, i, q, j))
    return {"pairs": pairs, "violations": bad, "ok": not bad}
