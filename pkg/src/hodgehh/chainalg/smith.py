"""Smith normal form of small dense matrices, with unimodular certificates.

Matrices are lists of rows.  ``smith(M, ring)`` returns an object holding
``U, Uinv, V, Vinv`` and the diagonal so that ``U @ M @ V == D``.
Sparse callers reduce their matrices first (see :mod:`.complex`) and only
hand the dense remainder to this module.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..rings import ZZ, Ring


def identity(n: int, ring: Ring = ZZ):
    one, zero = ring(1), ring(0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B, ring: Ring = ZZ):
    if not A or not B:
        cols = len(B[0]) if B else 0
        return [[ring(0)] * cols for _ in range(len(A))]
    Bt = list(zip(*B))
    red = ring.reduce
    return [[red(sum(a * b for a, b in zip(row, col) if a and b)) for col in Bt] for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def zeros(r: int, c: int, ring: Ring = ZZ):
    z = ring(0)
    return [[z] * c for _ in range(r)]


@dataclass
class SmithForm:
    diagonal: list      # nonzero diagonal entries d_1 | d_2 | ...
    U: list
    Uinv: list
    V: list
    Vinv: list
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def invariant_factors(self, ring: Ring = ZZ):
        return tuple(ring.normal(d) for d in self.diagonal)


def smith(M, ring: Ring = ZZ, nrows: int | None = None, ncols: int | None = None) -> SmithForm:
    """Smith normal form over a Euclidean ring (Z or a field)."""
    A = [list(map(ring, row)) for row in M]
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    if not A:
        A = zeros(m, n, ring)
    red = ring.reduce
    U, Uinv = identity(m, ring), identity(m, ring)
    V, Vinv = identity(n, ring), identity(n, ring)

    def row_add(i, j, c):  # row_i += c * row_j
        if not c:
            return
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] = red(Ai[k] + c * Aj[k])
        Ui, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui[k] = red(Ui[k] + c * Uj[k])
        for row in Uinv:  # col_j -= c * col_i
            if row[i]:
                row[j] = red(row[j] - c * row[i])

    def col_add(i, j, c):  # col_i += c * col_j
        if not c:
            return
        for row in A:
            if row[j]:
                row[i] = red(row[i] + c * row[j])
        for row in V:
            if row[j]:
                row[i] = red(row[i] + c * row[j])
        Vi, Vj = Vinv[i], Vinv[j]
        for k in range(n):  # row_j -= c * row_i
            if Vi[k]:
                Vj[k] = red(Vj[k] - c * Vi[k])

    def row_swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_scale(i, u):  # u a unit
        if u == 1:
            return
        ui = ring.inv(u)
        A[i] = [red(x * u) for x in A[i]]
        U[i] = [red(x * u) for x in U[i]]
        for row in Uinv:
            row[i] = red(row[i] * ui)

    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j]:
                    s = ring.size(row[j])
                    if best is None or s < best[0]:
                        best = (s, i, j)
                        if s == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = ring.divmod(A[i][t], p)
                    row_add(i, t, -q)
                    if r:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = ring.divmod(A[t][j], p)
                    col_add(j, t, -q)
                    if r:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the diagonal
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or ring.size(A[i][t]) < best[0]):
                        best = (ring.size(A[i][t]), "r", i)
                for j in range(t, n):
                    if A[t][j] and (best is None or ring.size(A[t][j]) < best[0]):
                        best = (ring.size(A[t][j]), "c", j)
                if best[1] == "r":
                    row_swap(t, best[2])
                else:
                    col_swap(t, best[2])
                continue
            # divisibility: p must divide the whole remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] and ring.divmod(A[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        p = A[t][t]
        norm = ring.normal(p)
        if p != norm:
            row_scale(t, ring.reduce(norm * ring.inv(p)) if ring.is_field else (1 if p > 0 else -1))
        diag.append(A[t][t])
        t += 1
    return SmithForm(diag, U, Uinv, V, Vinv, m, n)


def invariant_factors(M, ring: Ring = ZZ):
    return smith(M, ring).invariant_factors(ring)


def rank(M, ring: Ring, nrows=None, ncols=None) -> int:
    """Rank by fraction-free/field elimination without certificates."""
    A = [list(map(ring, row)) for row in M]
    if not A:
        return 0
    red = ring.reduce
    r = 0
    ncols = len(A[0]) if ncols is None else ncols
    rows = [row for row in A if any(row)]
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if x:
                if ring.is_field:
                    f = red(x * ring.inv(p))
                    rows[i] = [red(a - f * b) for a, b in zip(rows[i], rows[r])]
                else:
                    rows[i] = [a * p - x * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def determinant(M, ring: Ring = ZZ):
    """Exact determinant (Bareiss over Z, Gaussian elimination over a field)."""
    if len(M) == 0:
        return ring(1)
    return _bareiss(M, ring)


def _bareiss(M, ring: Ring):
    A = [list(map(ring, row)) for row in M]
    n = len(A)
    if ring.is_field:
        det = ring(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c]), None)
            if piv is None:
                return ring(0)
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                det = ring.reduce(-det)
            p = A[c][c]
            det = ring.reduce(det * p)
            pi = ring.inv(p)
            for i in range(c + 1, n):
                f = ring.reduce(A[i][c] * pi)
                if f:
                    A[i] = [ring.reduce(a - f * b) for a, b in zip(A[i], A[c])]
        return det
    sign, prev = 1, 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
        prev = A[c][c]
    return sign * A[n - 1][n - 1]
