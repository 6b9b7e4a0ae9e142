"""Eulerian idempotents in Q[S_q], the Hodge decomposition of rational
Hochschild homology, and Adams operations.

A permutation ``sigma`` (tuple of images of 0..q-1) moves the tensor factor
in position i to position sigma(i).  The operation psi^r is the signed sum
of all r-block shuffles; the idempotents e^(i) are recovered from
psi^r = Σ_i r^i e^(i) by interpolation in r.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .chainalg import ChainMap, induced_map
from .chainalg.smith import rank
from .loday import LodayComplex, loday_complex
from .loday.filtration import from_hochschild, to_hochschild
from .rings import QQ

IDEMPOTENT_BUDGET = 7


class EulerianError(ValueError):
    pass


def sign(p: tuple) -> int:
    s, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, n = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            if n % 2 == 0:
                s = -s
    return s


def descents(p: tuple) -> int:
    return sum(1 for i in range(len(p) - 1) if p[i] > p[i + 1])


class SymAlgebraElement:
    """Element of Q[S_q] as a sparse map permutation -> Fraction."""

    def __init__(self, q: int, coeffs: dict):
        self.q = q
        self.coeffs = {p: Fraction(c) for p, c in coeffs.items() if c}

    @classmethod
    def identity(cls, q: int) -> "SymAlgebraElement":
        return cls(q, {tuple(range(q)): 1})

    def __mul__(self, other: "SymAlgebraElement") -> "SymAlgebraElement":
        out: dict = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                st = tuple(s[t[i]] for i in range(self.q))
                out[st] = out.get(st, 0) + a * b
        return SymAlgebraElement(self.q, out)

    def __add__(self, other: "SymAlgebraElement") -> "SymAlgebraElement":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return SymAlgebraElement(self.q, out)

    def scale(self, c) -> "SymAlgebraElement":
        return SymAlgebraElement(self.q, {p: c * v for p, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, SymAlgebraElement) and self.q == other.q and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def act(self, word: tuple) -> dict:
        """Action on a tensor word (a_1, ..., a_q): factor i goes to position sigma(i)."""
        out: dict = {}
        for p, c in self.coeffs.items():
            w = [None] * self.q
            for i, a in enumerate(word):
                w[p[i]] = a
            w = tuple(w)
            out[w] = out.get(w, 0) + c
        return {w: c for w, c in out.items() if c}

    def __repr__(self):
        return f"SymAlgebraElement(q={self.q}, {len(self.coeffs)} terms)"


def adams_element(q: int, r: int) -> SymAlgebraElement:
    """psi^r in Q[S_q]: Σ over r-block shuffles of sgn(sigma) sigma.

    The number of compositions for which sigma is a shuffle is
    C(r - des(sigma) + q - 1, q), which gives the coefficients directly.
    """
    if q == 0:
        return SymAlgebraElement(0, {(): 1})
    out = {}
    for p in permutations(range(q)):
        n = r - descents(p) + q - 1
        c = comb(n, q) if n >= q else 0
        if c:
            out[p] = sign(p) * c
    return SymAlgebraElement(q, out)


@lru_cache(maxsize=None)
def eulerian_idempotents(q: int, budget: int = IDEMPOTENT_BUDGET) -> tuple:
    """(e^(1), ..., e^(q)) for q >= 1; (identity,) for q = 0."""
    if q > budget:
        raise EulerianError(f"q = {q} exceeds the idempotent budget {budget}")
    if q == 0:
        return (SymAlgebraElement.identity(0),)
    psis = [adams_element(q, r) for r in range(1, q + 1)]
    # solve Σ_i r^i e_i = psi^r for r = 1..q (Vandermonde, exact)
    V = [[Fraction(r) ** i for i in range(1, q + 1)] for r in range(1, q + 1)]
    inv = _inverse(V)
    perms = set().union(*(p.coeffs for p in psis))
    es = []
    for i in range(q):
        coeffs = {}
        for p in perms:
            c = sum(inv[i][r] * psis[r].coeffs.get(p, 0) for r in range(q))
            if c:
                coeffs[p] = c
        es.append(SymAlgebraElement(q, coeffs))
    return tuple(es)


def _inverse(M):
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


# exact products in Q[S_q] at full size ------------------------------------------

class GroupTable:
    """Multiplication table of S_q for fast exact products in Q[S_q]."""

    def __init__(self, q: int):
        import numpy as np

        self.q = q
        self.perms = list(permutations(range(q)))
        self.index = {p: k for k, p in enumerate(self.perms)}
        P = np.array(self.perms, dtype=np.int64).reshape(len(self.perms), q)
        weights = q ** np.arange(q, dtype=np.int64)
        code = np.full(q ** q, -1, dtype=np.int64)
        code[P @ weights] = np.arange(len(self.perms))
        # mult[s, t] = index of s ∘ t
        self.mult = np.stack([code[P[s][P] @ weights] for s in range(len(self.perms))])

    def vector(self, e: SymAlgebraElement, scale: int):
        import numpy as np

        v = np.zeros(len(self.perms), dtype=object)
        for p, c in e.coeffs.items():
            x = c * scale
            if x.denominator != 1:
                raise EulerianError("scale does not clear denominators")
            v[self.index[p]] = int(x)
        return v

    def product(self, a, b):
        """Exact product of integer coefficient vectors."""
        import numpy as np

        bound = int(max(abs(x) for x in a)) * int(max(abs(x) for x in b)) * len(self.perms)
        dtype = np.int64 if bound < 2 ** 62 else object
        a, b = a.astype(dtype), b.astype(dtype)
        out = np.zeros(len(self.perms), dtype=dtype)
        for s in np.nonzero(a)[0]:
            out[self.mult[s]] += a[s] * b
        return out


def verify_idempotents(q: int) -> dict:
    """Exact check of e^(i) e^(j) = δ_ij e^(i) and Σ e^(i) = 1 in Q[S_q]."""
    from math import lcm

    import numpy as np

    es = eulerian_idempotents(q)
    total = SymAlgebraElement(q, {})
    for e in es:
        total = total + e
    sum_ok = total == SymAlgebraElement.identity(q)
    if q == 0:
        return {"q": 0, "idempotent": True, "orthogonal": True, "sum_to_one": sum_ok}
    G = GroupTable(q)
    D = lcm(*[c.denominator for e in es for c in e.coeffs.values()])
    vecs = [G.vector(e, D) for e in es]
    idem, orth = True, True
    for i, a in enumerate(vecs):
        for j, b in enumerate(vecs):
            prod = G.product(a, b)
            want = D * a.astype(prod.dtype) if i == j else np.zeros_like(prod)
            if not np.array_equal(prod, want):
                if i == j:
                    idem = False
                else:
                    orth = False
    return {"q": q, "idempotent": idem, "orthogonal": orth, "sum_to_one": sum_ok}


# action on Hochschild chains -----------------------------------------------------

def _chain_operator(L: LodayComplex, elements: dict) -> ChainMap:
    """Chain endomorphism acting by ``elements[q]`` on the bar factors in degree q."""
    maps = {}
    for q, e in elements.items():
        if q not in L.labels:
            continue
        cols = {}
        for k in range(len(L.labels[q])):
            word = to_hochschild(L, q, k)
            col = {}
            for w, c in e.act(word[1:]).items():
                t = from_hochschild(L, (word[0],) + w)
                if t is not None:
                    col[t] = col.get(t, 0) + c
            col = {t: c for t, c in col.items() if c}
            if col:
                cols[k] = col
        maps[q] = cols
    return ChainMap(L.complex, L.complex, maps, check=False)


def idempotent_operator(L: LodayComplex, i: int) -> ChainMap:
    """e^(i) acting degreewise (zero where i is out of range)."""
    els = {}
    for q in L.labels:
        if q == 0:
            els[q] = SymAlgebraElement.identity(0) if i == 0 else SymAlgebraElement(0, {})
        elif 1 <= i <= q:
            els[q] = eulerian_idempotents(q)[i - 1]
        else:
            els[q] = SymAlgebraElement(q, {})
    return _chain_operator(L, els)


def adams_operator(L: LodayComplex, r: int) -> ChainMap:
    """psi^r = Σ_i r^i e^(i) acting on the chains."""
    els = {}
    for q in L.labels:
        if q == 0:
            els[q] = SymAlgebraElement.identity(0)
            continue
        total = SymAlgebraElement(q, {})
        for i, e in enumerate(eulerian_idempotents(q), start=1):
            total = total + e.scale(Fraction(r) ** i)
        els[q] = total
    return _chain_operator(L, els)


@dataclass(frozen=True)
class HodgeComponentRecord:
    degree: int
    index: int
    dim: int
    weight: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "i": self.index, "dim": self.dim, "weight": self.weight}


def _block_operator(f: ChainMap, block) -> ChainMap:
    """Restrict an operator on L to a weight block (operators preserve weight)."""
    emb = block.embedding
    pos = {q: {k: j for j, k in enumerate(ks)} for q, ks in emb.items()}
    maps = {}
    for q, ks in emb.items():
        cols = {}
        for j, k in enumerate(ks):
            col = {pos[q][t]: c for t, c in f.maps.get(q, {}).get(k, {}).items() if t in pos[q]}
            if col:
                cols[j] = col
        maps[q] = cols
    return ChainMap(block, block, maps, check=False)


def _require_q(L: LodayComplex):
    if not L.algebra.ring.is_field or L.algebra.ring != QQ:
        raise EulerianError("the Hodge decomposition is computed over Q only")


def hodge_components(L: LodayComplex) -> list:
    """Dimensions of e^(i) HH_n per weight block, for n <= L.max_degree."""
    _require_q(L)
    out = []
    ops = {i: idempotent_operator(L, i) for i in range(L.max_degree + 1)}
    for w in L.weights:
        block = L.complex.weight_block(w)
        for n in range(L.max_degree + 1):
            h = block.homology(n).betti
            idx = [0] if n == 0 else list(range(1, n + 1))
            for i in idx:
                if not h:
                    out.append(HodgeComponentRecord(n, i, 0, w))
                    continue
                M = induced_map(_block_operator(ops[i], block), n)
                out.append(HodgeComponentRecord(n, i, rank(M, QQ), w))
    return out


def hodge_components_for(R, N: int, W: int | None = None) -> list:
    from .simplicial import standard_circle
    return hodge_components(loday_complex(R, standard_circle(max(N + 1, 2)), N, W))


def adams_matrix(L: LodayComplex, r: int) -> dict:
    """{(n, w): matrix of psi^r on HH_n in weight w} over Q."""
    _require_q(L)
    op = adams_operator(L, r)
    out = {}
    for w in L.weights:
        block = L.complex.weight_block(w)
        bop = _block_operator(op, block)
        for n in range(L.max_degree + 1):
            if block.homology(n).betti:
                out[(n, w)] = induced_map(bop, n)
    return out


def eigen_multiplicities(M, candidates) -> dict:
    """{lambda: dim ker(M - lambda)} for each candidate, by exact rank."""
    n = len(M)
    out = {}
    for lam in candidates:
        A = [[Fraction(M[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        k = n - rank(A, QQ)
        if k:
            out[lam] = out.get(lam, 0) + k
    return out
