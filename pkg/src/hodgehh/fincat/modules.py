"""Finitely presented modules over Z, Q or F_p: generators modulo relations."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..chainalg.smith import smith
from ..rings import ZZ, Ring


def kron(A, B, ra: int, ca: int, rb: int, cb: int):
    """Kronecker product of dense matrices with explicit shapes."""
    out = [[0] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if not a:
                continue
            for k in range(rb):
                for l in range(cb):
                    if B[k][l]:
                        out[i * rb + k][j * cb + l] = a * B[k][l]
    return out


def matmul(A, B, rows: int, inner: int, cols: int, red=lambda x: x):
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for t in range(inner):
            a = A[i][t]
            if a:
                Bt = B[t]
                for j in range(cols):
                    if Bt[j]:
                        out[i][j] += a * Bt[j]
        out[i] = [red(x) for x in out[i]]
    return out


def eye(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class PresentedModule:
    """k^ngens modulo the span of ``relations`` (vectors of length ngens)."""
    ngens: int
    relations: list = field(default_factory=list)
    ring: Ring = ZZ

    @classmethod
    def free(cls, n: int, ring: Ring = ZZ) -> "PresentedModule":
        return cls(n, [], ring)

    def structure(self) -> tuple:
        """(free rank, torsion invariant factors > 1)."""
        rels = [r for r in self.relations if any(self.ring.reduce(x) for x in r)]
        if not rels:
            return self.ngens, ()
        M = [[self.ring(r[i]) for r in rels] for i in range(self.ngens)]
        S = smith(M, self.ring, nrows=self.ngens, ncols=len(rels))
        facs = S.invariant_factors(self.ring)
        torsion = tuple(f for f in facs if not self.ring.is_unit(f))
        return self.ngens - S.rank, torsion

    def invariant_factors(self) -> tuple:
        """Normal form: torsion factors followed by zeros for the free part."""
        r, t = self.structure()
        return t + (0,) * r

    def isomorphic(self, other: "PresentedModule") -> bool:
        return self.structure() == other.structure()

    def __repr__(self):
        r, t = self.structure()
        parts = [f"{self.ring}^{r}"] if r else []
        parts += [f"{self.ring}/{d}" for d in t]
        return " + ".join(parts) or "0"


def direct_sum(mods) -> tuple:
    """(PresentedModule, offsets) for the direct sum of presented modules."""
    offsets, n, rels = [], 0, []
    ring = mods[0].ring if mods else ZZ
    for M in mods:
        offsets.append(n)
        n += M.ngens
    for M, off in zip(mods, offsets):
        for r in M.relations:
            v = [0] * n
            v[off:off + M.ngens] = r
            rels.append(v)
    return PresentedModule(n, rels, ring), offsets


def tensor(A: PresentedModule, B: PresentedModule) -> PresentedModule:
    """A ⊗ B with generators a_i ⊗ b_j at index i * B.ngens + j."""
    n = A.ngens * B.ngens
    rels = []
    for r in A.relations:
        for j in range(B.ngens):
            v = [0] * n
            for i, x in enumerate(r):
                if x:
                    v[i * B.ngens + j] = x
            rels.append(v)
    for r in B.relations:
        for i in range(A.ngens):
            v = [0] * n
            for j, x in enumerate(r):
                if x:
                    v[i * B.ngens + j] = x
            rels.append(v)
    return PresentedModule(n, rels, A.ring)
