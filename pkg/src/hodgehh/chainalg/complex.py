"""Sparse chain complexes over Z, Q or F_p and their exact homology.

A differential ``d[n]`` maps degree ``n`` to degree ``n - 1`` and is stored
column-wise: ``d[n][j] == {i: value}`` is the boundary of basis element
``j`` of ``C_n``.  Vectors are dicts ``{index: value}`` with no zero entries.

Homology is computed by first collapsing unit pivots (algebraic Gaussian
elimination, keeping the chain equivalences so that cycles can be moved
back and forth) and then running Smith normal form on what is left.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..rings import QQ, ZZ, Ring
from .smith import smith


class ChainComplexError(ValueError):
    pass


def vec_add(u: dict, v: dict, c, red) -> None:
    """u += c * v in place."""
    for k, x in v.items():
        y = red(u.get(k, 0) + c * x)
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def apply_sparse(M: dict, vec: dict, red) -> dict:
    """Apply a column-stored sparse matrix to a sparse vector."""
    out: dict = {}
    for j, x in vec.items():
        col = M.get(j)
        if col:
            vec_add(out, col, x, red)
    return out


@dataclass(frozen=True)
class HomologyRecord:
    degree: int
    betti: int
    torsion: tuple = ()
    weight: int | None = None

    def to_json(self) -> dict:
        out = {"degree": self.degree, "betti": self.betti, "torsion": [str(t) for t in self.torsion]}
        if self.weight is not None:
            out["weight"] = self.weight
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "HomologyRecord":
        return cls(obj["degree"], obj["betti"], tuple(int(t) for t in obj.get("torsion", [])), obj.get("weight"))


class ChainComplex:
    """Bounded complex of free modules with sparse differentials.

    ``ranks`` maps degree to rank; missing degrees are zero.  ``labels`` and
    ``weights`` (per-degree lists) are optional.  d∘d = 0 is checked on
    construction unless ``check=False``.
    """

    def __init__(self, ring: Ring, ranks: dict, d: dict, labels: dict | None = None,
                 weights: dict | None = None, check: bool = True):
        self.ring = ring
        self.ranks = {n: r for n, r in ranks.items() if r}
        self.d = {n: {j: dict(col) for j, col in cols.items() if col} for n, cols in d.items()}
        self.labels = labels
        self.weights = weights
        if check:
            self.validate()

    # basic shape -----------------------------------------------------------
    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    @property
    def degrees(self) -> range:
        if not self.ranks:
            return range(0)
        return range(min(self.ranks), max(self.ranks) + 1)

    def differential(self, n: int) -> dict:
        return self.d.get(n, {})

    def boundary(self, vec: dict, n: int) -> dict:
        return apply_sparse(self.d.get(n, {}), vec, self.ring.reduce)

    def dense_differential(self, n: int):
        rows, cols = self.rank(n - 1), self.rank(n)
        M = [[self.ring(0)] * cols for _ in range(rows)]
        for j, col in self.d.get(n, {}).items():
            for i, x in col.items():
                M[i][j] = x
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in self.ranks.items())

    def validate(self) -> None:
        red = self.ring.reduce
        for n, cols in self.d.items():
            for j, col in cols.items():
                if not 0 <= j < self.rank(n):
                    raise ChainComplexError(f"column {j} out of range in degree {n}")
                for i in col:
                    if not 0 <= i < self.rank(n - 1):
                        raise ChainComplexError(f"row {i} out of range in d_{n}")
                if self.weights is not None:
                    w = self.weights[n][j]
                    for i in col:
                        if self.weights[n - 1][i] != w:
                            raise ChainComplexError(f"d_{n} does not preserve weight at column {j}")
        for n, cols in self.d.items():
            lower = self.d.get(n - 1)
            if not lower:
                continue
            for j, col in cols.items():
                if apply_sparse(lower, col, red):
                    raise ChainComplexError(f"d_{n - 1} d_{n} != 0 on basis element {j}")

    # structure -------------------------------------------------------------
    def weight_values(self) -> list:
        if self.weights is None:
            return [None]
        return sorted({w for ws in self.weights.values() for w in ws})

    def weight_block(self, w) -> "ChainComplex":
        """Sub-complex spanned by basis elements of weight ``w``."""
        if self.weights is None:
            raise ChainComplexError("complex carries no weight grading")
        keep = {n: [j for j, x in enumerate(ws) if x == w] for n, ws in self.weights.items()}
        return self.restrict(keep, weight=w)

    def restrict(self, keep: dict, weight=None) -> "ChainComplex":
        """Sub- or quotient-complex on the basis subset ``keep[n]`` (ordered).

        Entries outside the kept basis are dropped, so this is the subcomplex
        when ``keep`` is closed under d and the quotient when its complement is.
        """
        index = {n: {j: k for k, j in enumerate(js)} for n, js in keep.items()}
        d = {}
        for n, js in keep.items():
            below = index.get(n - 1, {})
            cols = {}
            for k, j in enumerate(js):
                col = self.d.get(n, {}).get(j)
                if col:
                    new = {below[i]: x for i, x in col.items() if i in below}
                    if new:
                        cols[k] = new
            d[n] = cols
        labels = None if self.labels is None else {n: [self.labels[n][j] for j in js] for n, js in keep.items()}
        weights = None
        if self.weights is not None and weight is None:
            weights = {n: [self.weights[n][j] for j in js] for n, js in keep.items()}
        out = ChainComplex(self.ring, {n: len(js) for n, js in keep.items()}, d, labels, weights, check=False)
        out.block_weight = weight
        out.embedding = keep
        return out

    def change_ring(self, ring: Ring) -> "ChainComplex":
        d = {n: {j: {i: ring(x) for i, x in col.items() if ring(x)} for j, col in cols.items()}
             for n, cols in self.d.items()}
        return ChainComplex(ring, dict(self.ranks), d, self.labels, self.weights)

    @classmethod
    def from_dense(cls, ring: Ring, matrices: dict, ranks: dict | None = None, **kw) -> "ChainComplex":
        """Build from dense matrices ``{n: d_n}`` (rows = C_{n-1})."""
        ranks = dict(ranks or {})
        d = {}
        for n, M in matrices.items():
            rows = len(M)
            cols = len(M[0]) if M else ranks.get(n, 0)
            ranks.setdefault(n, cols)
            ranks.setdefault(n - 1, rows)
            d[n] = {j: {i: ring(M[i][j]) for i in range(rows) if M[i][j]} for j in range(cols)}
        return cls(ring, ranks, d, **kw)

    # homology --------------------------------------------------------------
    @cached_property
    def _reduction(self) -> "_Reduction":
        return _Reduction(self)

    def homology(self, n: int) -> HomologyRecord:
        return self.homology_basis(n).record

    def homology_basis(self, n: int) -> "HomologyBasis":
        return self._reduction.basis(n)

    def betti_numbers(self, degrees=None) -> list:
        degrees = self.degrees if degrees is None else degrees
        return [self.homology(n).betti for n in degrees]

    def __repr__(self):
        return f"ChainComplex({self.ring}, ranks={dict(sorted(self.ranks.items()))})"


def homology(C: ChainComplex, n: int) -> HomologyRecord:
    if C.ranks and not (min(C.ranks) - 1 <= n <= max(C.ranks) + 1):
        raise ChainComplexError(f"degree {n} outside the complex range {C.degrees}")
    return C.homology(n)


class ChainMap:
    """Degreewise sparse matrices ``f[n][j] = {i: value}``: source C_n -> target C_n."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: dict, shift: int = 0,
                 check: bool = True):
        self.source = source
        self.target = target
        self.maps = {n: {j: dict(c) for j, c in cols.items() if c} for n, cols in maps.items()}
        self.shift = shift  # degree n of source goes to degree n + shift of target
        if check:
            self.validate()

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def apply(self, vec: dict, n: int) -> dict:
        return apply_sparse(self.maps.get(n, {}), vec, self.ring.reduce)

    def validate(self) -> None:
        red = self.ring.reduce
        s = self.shift
        for n in set(self.source.ranks) | set(self.maps):
            for j in range(self.source.rank(n)):
                lhs = self.target.boundary(self.apply({j: 1}, n), n + s)
                rhs = self.apply(self.source.boundary({j: 1}, n), n - 1)
                sign = (-1) ** s
                diff = dict(lhs)
                vec_add(diff, rhs, -sign, red)
                if diff:
                    raise ChainComplexError(f"chain map does not commute with d in degree {n} (basis {j})")
        S, T = self.source, self.target
        if S.weights is not None and T.weights is not None and s == 0:
            for n, cols in self.maps.items():
                for j, col in cols.items():
                    for i in col:
                        if S.weights[n][j] != T.weights[n][i]:
                            raise ChainComplexError(f"chain map breaks weight in degree {n}")

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        red = self.ring.reduce
        maps = {}
        for n, cols in other.maps.items():
            m = n + other.shift
            maps[n] = {j: apply_sparse(self.maps.get(m, {}), col, red) for j, col in cols.items()}
        return ChainMap(other.source, self.target, maps, other.shift + self.shift, check=False)

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, {n: {j: {j: 1} for j in range(r)} for n, r in C.ranks.items()}, check=False)

    @classmethod
    def zero(cls, A: ChainComplex, B: ChainComplex) -> "ChainMap":
        return cls(A, B, {}, check=False)

    def dense(self, n: int):
        T, S = self.target.rank(n + self.shift), self.source.rank(n)
        M = [[0] * S for _ in range(T)]
        for j, col in self.maps.get(n, {}).items():
            for i, x in col.items():
                M[i][j] = x
        return M


# ---------------------------------------------------------------------------
# reduction by unit pivots


@dataclass
class HomologyBasis:
    """Homology of one degree with explicit representatives.

    ``free`` holds cycles (in the original basis) spanning the free part, in
    the order fixed by the Smith kernel basis; ``coordinates`` expresses any
    cycle in that basis.
    """
    record: HomologyRecord
    free: list = field(default_factory=list)
    torsion_generators: list = field(default_factory=list)
    _coords: object = None

    def coordinates(self, cycle: dict) -> list:
        return self._coords(cycle)[0]

    def torsion_coordinates(self, cycle: dict) -> list:
        return self._coords(cycle)[1]


class _Reduction:
    def __init__(self, C: ChainComplex):
        self.C = C
        ring = C.ring
        self.ring = ring
        red = ring.reduce
        cols = {n: {j: dict(c) for j, c in C.d.get(n, {}).items()} for n in C.ranks}
        rows: dict = {n: {} for n in cols}
        for n, cs in cols.items():
            for j, col in cs.items():
                for i in col:
                    rows[n].setdefault(i, set()).add(j)
        alive = {n: set(range(r)) for n, r in C.ranks.items()}
        self.log_by_degree: dict = {}   # degree n -> list of steps eliminating a row a in C_n
        self.steps = []

        progress = True
        while progress:
            progress = False
            for n in sorted(cols):
                if n - 1 not in alive:
                    continue
                cs, rs = cols[n], rows[n]
                order = sorted(cs, key=lambda j: len(cs[j]))
                for b in order:
                    col = cs.get(b)
                    if not col:
                        continue
                    best = None
                    for a, u in col.items():
                        if ring.is_unit(u):
                            cost = len(rs[a])
                            if best is None or cost < best[0]:
                                best = (cost, a, u)
                    if best is None:
                        continue
                    _, a, u = best
                    self._eliminate(n, a, b, u, cols, rows, alive, red)
                    progress = True
        self.alive = {n: sorted(s) for n, s in alive.items()}
        self.index = {n: {j: k for k, j in enumerate(js)} for n, js in self.alive.items()}
        self.cols = cols
        self._cache: dict = {}

    def _eliminate(self, n, a, b, u, cols, rows, alive, red):
        ring = self.ring
        uinv = ring.inv(u)
        colb = dict(cols[n][b])
        rowa = {c: cols[n][c][a] for c in rows[n][a]}
        cs, rs = cols[n], rows[n]
        for c, x in rowa.items():
            if c == b:
                continue
            f = red(x * uinv)
            colc = cs[c]
            for r, y in colb.items():
                v = red(colc.get(r, 0) - f * y)
                if v:
                    if r not in colc:
                        rs.setdefault(r, set()).add(c)
                    colc[r] = v
                elif r in colc:
                    del colc[r]
                    rs[r].discard(c)
        for r in colb:
            rs[r].discard(b)
        del cs[b]
        rs.pop(a, None)
        alive[n].discard(b)
        alive[n - 1].discard(a)
        # b is also a row of d_{n+1}
        up = cols.get(n + 1)
        if up is not None:
            for c in rows[n + 1].pop(b, ()):
                up[c].pop(b, None)
        # a is also a column of d_{n-1}
        down = cols.get(n - 1)
        if down is not None and a in down:
            for r in down[a]:
                rows[n - 1][r].discard(a)
            del down[a]
        step = (n, a, b, uinv, colb, rowa)
        self.steps.append(step)
        self.log_by_degree.setdefault(n - 1, []).append(len(self.steps) - 1)

    # chain equivalences ---------------------------------------------------
    def project(self, vec: dict, k: int) -> dict:
        """f: C -> reduced complex, in degree k (returned in reduced indices)."""
        red = self.ring.reduce
        x = dict(vec)
        for step in self.steps:
            n, a, b, uinv, colb, _ = step
            if n - 1 == k:
                c = x.get(a)
                if c:
                    vec_add(x, colb, -red(c * uinv), red)
            elif n == k:
                x.pop(b, None)
        idx = self.index.get(k, {})
        return {idx[i]: v for i, v in x.items() if i in idx}

    def lift(self, vec: dict, k: int) -> dict:
        """g: reduced complex -> C, in degree k (input in reduced indices)."""
        red = self.ring.reduce
        js = self.alive.get(k, [])
        y = {js[i]: v for i, v in vec.items()}
        for step in reversed(self.steps):
            n, a, b, uinv, colb, rowa = step
            if n == k:
                beta = red(sum(rowa[c] * y[c] for c in rowa if c != b and c in y))
                if beta:
                    y[b] = red(-beta * uinv)
        return y

    def reduced_dense(self, n: int):
        rows_idx = self.index.get(n - 1, {})
        ncols = len(self.alive.get(n, []))
        M = [[self.ring(0)] * ncols for _ in range(len(rows_idx))]
        cols = self.cols.get(n, {})
        for k, j in enumerate(self.alive.get(n, [])):
            for i, x in cols.get(j, {}).items():
                M[rows_idx[i]][k] = x
        return M

    def basis(self, n: int) -> HomologyBasis:
        if n in self._cache:
            return self._cache[n]
        ring = self.ring
        red = ring.reduce
        k_n = len(self.alive.get(n, []))
        A = self.reduced_dense(n)
        SA = smith(A, ring, nrows=len(self.alive.get(n - 1, [])), ncols=k_n)
        r = SA.rank
        K = [row[r:] for row in SA.V]          # kernel basis as columns
        kdim = k_n - r
        B = self.reduced_dense(n + 1)
        nb = len(self.alive.get(n + 1, []))
        # B expressed in kernel coordinates: rows r.. of Vinv @ B
        Bk = []
        for i in range(r, k_n):
            vrow = SA.Vinv[i]
            Bk.append([red(sum(vrow[t] * B[t][j] for t in range(k_n) if vrow[t] and B[t][j])) for j in range(nb)])
        SB = smith(Bk, ring, nrows=kdim, ncols=nb)
        s = SB.rank
        factors = SB.invariant_factors(ring)
        torsion = tuple(f for f in factors if not ring.is_unit(f))
        gens = []
        for i in range(kdim):
            # column i of K @ Pinv
            col = {}
            for t in range(k_n):
                v = red(sum(K[t][l] * SB.Uinv[l][i] for l in range(kdim) if K[t][l] and SB.Uinv[l][i]))
                if v:
                    col[t] = v
            gens.append(col)
        free = [self.lift(g, n) for g in gens[s:]]
        tors = [self.lift(gens[i], n) for i in range(s) if not ring.is_unit(factors[i])]
        tors_idx = [i for i in range(s) if not ring.is_unit(factors[i])]

        def coords(cycle: dict):
            z = self.project(cycle, n)
            zr = [red(sum(SA.Vinv[i][t] * v for t, v in z.items() if SA.Vinv[i][t])) for i in range(r, k_n)]
            c = [red(sum(SB.U[i][l] * zr[l] for l in range(kdim) if SB.U[i][l] and zr[l])) for i in range(kdim)]
            tc = [c[i] % factors[i] if ring is ZZ else c[i] for i in tors_idx]
            return c[s:], tc

        rec = HomologyRecord(n, kdim - s, torsion, getattr(self.C, "block_weight", None))
        out = HomologyBasis(rec, free, tors, coords)
        self._cache[n] = out
        return out


def induced_map(f: ChainMap, n: int):
    """Matrix of H_n(f) on the free parts, in the recorded homology bases.

    Rows index target generators, columns source generators.
    """
    src = f.source.homology_basis(n)
    tgt = f.target.homology_basis(n + f.shift)
    cols = [tgt.coordinates(f.apply(g, n)) for g in src.free]
    return [[cols[j][i] for j in range(len(cols))] for i in range(tgt.record.betti)]


def euler_from_betti(C: ChainComplex) -> int:
    """Alternating sum of rational Betti numbers."""
    CQ = C if C.ring.is_field else C.change_ring(QQ)
    return sum((-1) ** n * CQ.homology(n).betti for n in C.degrees)


# ---------------------------------------------------------------------------
# cones and fibers


def mapping_fiber(f: ChainMap):
    """Shifted mapping cone of ``f: A -> B``.

    ``Fib_n = A_n ⊕ B_{n+1}`` with ``d(a, b) = (d a, f a - d b)``.  Returns
    ``(Fib, proj, incl)`` where ``proj: Fib -> A`` is the projection and
    ``incl`` sends ``B_{n+1}`` into ``Fib_n``.
    """
    if f.shift:
        raise ChainComplexError("mapping_fiber needs a degree-preserving map")
    A, B = f.source, f.target
    ring = A.ring
    red = ring.reduce
    degs = set(A.ranks) | {n - 1 for n in B.ranks}
    ranks = {n: A.rank(n) + B.rank(n + 1) for n in degs}
    d = {}
    for n in degs:
        off_lo = A.rank(n - 1)
        cols = {}
        for j in range(A.rank(n)):
            col = dict(A.d.get(n, {}).get(j, {}))
            for i, x in f.maps.get(n, {}).get(j, {}).items():
                col[off_lo + i] = x
            if col:
                cols[j] = col
        off = A.rank(n)
        for j in range(B.rank(n + 1)):
            col = {off_lo + i: red(-x) for i, x in B.d.get(n + 1, {}).get(j, {}).items()}
            if col:
                cols[off + j] = col
        d[n] = cols
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = {n: [("A", l) for l in A.labels.get(n, [])] + [("B", l) for l in B.labels.get(n + 1, [])]
                  for n in degs}
    weights = None
    if A.weights is not None and B.weights is not None:
        weights = {n: list(A.weights.get(n, [])) + list(B.weights.get(n + 1, [])) for n in degs}
    F = ChainComplex(ring, ranks, d, labels, weights)
    proj = ChainMap(F, A, {n: {j: {j: 1} for j in range(A.rank(n))} for n in degs}, check=False)
    incl = {n: {j: {A.rank(n) + j: 1} for j in range(B.rank(n + 1))} for n in degs}
    return F, proj, incl


def fiber_map(f: ChainMap, g: ChainMap, fib_src, fib_tgt, h_a: ChainMap, h_b: ChainMap) -> ChainMap:
    """Map of fibers induced by a commuting square ``g ∘ h_a = h_b ∘ f``."""
    F1, F2 = fib_src, fib_tgt
    A1, A2 = f.source, g.source
    maps = {}
    for n in F1.ranks:
        cols = {}
        for j in range(A1.rank(n)):
            col = {i: x for i, x in h_a.maps.get(n, {}).get(j, {}).items()}
            if col:
                cols[j] = col
        off1, off2 = A1.rank(n), A2.rank(n)
        for j in range(f.target.rank(n + 1)):
            col = {off2 + i: x for i, x in h_b.maps.get(n + 1, {}).get(j, {}).items()}
            if col:
                cols[off1 + j] = col
        maps[n] = cols
    return ChainMap(F1, F2, maps)


# ---------------------------------------------------------------------------
# interchange formats


def matrix_to_coo(M: dict) -> str:
    """Coordinate-list text ``row col value`` for a column-stored sparse matrix."""
    lines = []
    for j in sorted(M):
        for i in sorted(M[j]):
            lines.append(f"{i} {j} {M[j][i]}")
    return "\n".join(lines) + ("\n" if lines else "")


def matrix_from_coo(text: str, ring: Ring = ZZ) -> dict:
    M: dict = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        i, j, v = line.split()
        x = ring(Fraction(v))
        if x:
            M.setdefault(int(j), {})[int(i)] = x
    return M


def records_to_json(records) -> str:
    return json.dumps([r.to_json() for r in records], sort_keys=True)

