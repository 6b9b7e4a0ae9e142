"""Finite simplicial sets stored by nondegenerate generators.

A simplex is a pair ``(s, g)``: ``g`` a generator of dimension ``p`` and
``s`` a monotone surjection ``[q] -> [p]`` stored as the tuple of its values.
This is the Eilenberg–Zilber normal form ``x = s^* g``.  Monotone maps
``theta: [a] -> [q]`` act contravariantly through :meth:`SimplicialSet.apply`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ..chainalg import ChainComplex, ChainMap
from ..rings import ZZ, Ring


class SimplicialError(ValueError):
    pass


# monotone maps ---------------------------------------------------------------

@lru_cache(maxsize=None)
def identity_map(n: int) -> tuple:
    return tuple(range(n + 1))


@lru_cache(maxsize=None)
def coface(i: int, n: int) -> tuple:
    """delta^i: [n-1] -> [n], skipping i."""
    return tuple(k if k < i else k + 1 for k in range(n))


@lru_cache(maxsize=None)
def codegeneracy(j: int, n: int) -> tuple:
    """sigma^j: [n+1] -> [n], hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def compose(f: tuple, g: tuple) -> tuple:
    """f ∘ g for maps stored as value tuples."""
    return tuple(f[v] for v in g)


def surjections(q: int, p: int):
    """All monotone surjections [q] -> [p], ordered by their repeat positions."""
    if not 0 <= p <= q:
        return
    for reps in combinations(range(q), q - p):
        reps = set(reps)
        out, c = [0], 0
        for i in range(1, q + 1):
            if i - 1 not in reps:
                c += 1
            out.append(c)
        yield tuple(out)


def repeats(s: tuple) -> tuple:
    return tuple(j for j in range(len(s) - 1) if s[j] == s[j + 1])


def is_identity(s: tuple) -> bool:
    return s[-1] == len(s) - 1


@dataclass(frozen=True)
class SimplexRef:
    """Simplex written as a strictly decreasing degeneracy word applied to a generator."""
    dim: int
    word: tuple
    generator: object

    @classmethod
    def of(cls, x) -> "SimplexRef":
        s, g = x
        return cls(len(s) - 1, tuple(sorted(repeats(s), reverse=True)), g)

    def simplex(self):
        reps = set(self.word)
        out, c = [0], 0
        for i in range(1, self.dim + 1):
            if i - 1 not in reps:
                c += 1
            out.append(c)
        return tuple(out), self.generator


# simplicial sets -------------------------------------------------------------

class SimplicialSet:
    """``generators[p]`` lists the nondegenerate p-simplices up to ``truncation``.

    ``faces[g]`` is the tuple ``(d_0 g, ..., d_p g)`` of simplices for every
    generator of positive dimension.  ``basepoint`` is an optional 0-generator.
    """

    def __init__(self, generators: dict, faces: dict, truncation: int, basepoint=None,
                 name: str = "", check: bool = True):
        self.generators = {p: list(gs) for p, gs in sorted(generators.items()) if gs}
        self.faces = faces
        self.truncation = truncation
        self.basepoint = basepoint
        self.name = name
        self.dim = {g: p for p, gs in self.generators.items() for g in gs}
        self.index = {g: k for gs in self.generators.values() for k, g in enumerate(gs)}
        self._restrict_memo: dict = {}
        self._apply_memo: dict = {}
        if basepoint is not None and self.dim.get(basepoint) != 0:
            raise SimplicialError("basepoint must be a 0-generator")
        if check:
            self.validate()

    # simplices ---------------------------------------------------------
    def simplex(self, g):
        return identity_map(self.dim[g]), g

    def apply(self, x, theta: tuple):
        """theta^* x for a monotone theta: [a] -> [dim x]."""
        key = (x, theta)
        hit = self._apply_memo.get(key)
        if hit is not None:
            return hit
        s, g = x
        t = tuple(s[i] for i in theta)
        image = sorted(set(t))
        pos = {v: k for k, v in enumerate(image)}
        s2, g2 = self._restrict(g, tuple(image))
        out = tuple(s2[pos[v]] for v in t), g2
        self._apply_memo[key] = out
        return out

    def _restrict(self, g, mono: tuple):
        key = (g, mono)
        hit = self._restrict_memo.get(key)
        if hit is not None:
            return hit
        p = self.dim[g]
        if len(mono) == p + 1:
            out = identity_map(p), g
        else:
            i = next(k for k in range(p + 1) if k not in mono)
            out = self.apply(self.faces[g][i], tuple(v - (v > i) for v in mono))
        self._restrict_memo[key] = out
        return out

    def face(self, x, i: int):
        q = len(x[0]) - 1
        return self.apply(x, coface(i, q))

    def degeneracy(self, x, j: int):
        q = len(x[0]) - 1
        return self.apply(x, codegeneracy(j, q))

    def simplices(self, q: int) -> list:
        """All q-simplices (degenerate ones included), in a fixed order."""
        out = []
        for p, gs in self.generators.items():
            if p > q:
                break
            for s in surjections(q, p):
                out.extend((s, g) for g in gs)
        return out

    def count(self, q: int) -> int:
        from math import comb
        return sum(comb(q, p) * len(gs) for p, gs in self.generators.items() if p <= q)

    def nondegenerate_counts(self, top: int | None = None) -> tuple:
        top = self.truncation if top is None else top
        return tuple(len(self.generators.get(p, [])) for p in range(top + 1))

    def vertex(self, x, i: int):
        return self.apply(x, (i,))[1]

    @property
    def is_reduced(self) -> bool:
        return len(self.generators.get(0, [])) == 1 and self.basepoint is not None

    # checks ------------------------------------------------------------
    def validate(self) -> None:
        for p, gs in self.generators.items():
            for g in gs:
                if p == 0:
                    continue
                fs = self.faces.get(g)
                if fs is None or len(fs) != p + 1:
                    raise SimplicialError(f"generator {g!r} needs {p + 1} faces")
                for x in fs:
                    s, h = x
                    if len(s) != p or h not in self.dim or s[-1] != self.dim[h] or s[0] != 0:
                        raise SimplicialError(f"bad face {x!r} of {g!r}")
        for p, gs in self.generators.items():
            if p < 2:
                continue
            for g in gs:
                x = self.simplex(g)
                for j in range(p + 1):
                    for i in range(j):
                        a = self.face(self.face(x, j), i)
                        b = self.face(self.face(x, i), j - 1)
                        if a != b:
                            raise SimplicialError(f"d_{i} d_{j} != d_{j - 1} d_{i} on {g!r}")

    def check_identities(self, top: int, degenerate: bool = True) -> None:
        """All simplicial identities on every simplex of dimension <= top.

        With ``degenerate=False`` only generators are tested.
        """
        for q in range(top + 1):
            xs = self.simplices(q) if degenerate else [self.simplex(g) for g in self.generators.get(q, [])]
            for x in xs:
                for j in range(q + 1):
                    for i in range(j if q >= 2 else 0):
                        if self.face(self.face(x, j), i) != self.face(self.face(x, i), j - 1):
                            raise SimplicialError(f"d_{i} d_{j} on {x!r}")
                    if self.face(self.degeneracy(x, j), j) != x or self.face(self.degeneracy(x, j), j + 1) != x:
                        raise SimplicialError(f"d s = id fails on {x!r}")
                    for i in range(j + 1):
                        lhs = self.degeneracy(self.degeneracy(x, j), i)
                        rhs = self.degeneracy(self.degeneracy(x, i), j + 1)
                        if lhs != rhs:
                            raise SimplicialError(f"s_{i} s_{j} on {x!r}")
                    for i in range(q + 2):
                        lhs = self.face(self.degeneracy(x, j), i)
                        if i < j:
                            rhs = self.degeneracy(self.face(x, i), j - 1)
                        elif i > j + 1:
                            rhs = self.degeneracy(self.face(x, i - 1), j)
                        else:
                            continue
                        if rhs is not None and lhs != rhs:
                            raise SimplicialError(f"d_{i} s_{j} on {x!r}")

    # derived objects ---------------------------------------------------
    def chains(self, ring: Ring = ZZ, top: int | None = None) -> ChainComplex:
        """Normalized chains: generators of each dimension with alternating faces."""
        top = self.truncation if top is None else top
        ranks, d = {}, {}
        for p in range(top + 1):
            gs = self.generators.get(p, [])
            ranks[p] = len(gs)
            if p == 0:
                continue
            cols = {}
            for k, g in enumerate(gs):
                col: dict = {}
                for i, (s, h) in enumerate(self.faces[g]):
                    if is_identity(s):
                        j = self.index[h]
                        v = col.get(j, 0) + (-1) ** i
                        if v:
                            col[j] = ring(v)
                        else:
                            col.pop(j, None)
                if col:
                    cols[k] = col
            d[p] = cols
        labels = {p: list(self.generators.get(p, [])) for p in range(top + 1)}
        return ChainComplex(ring, ranks, d, labels=labels)

    def subcomplex(self, keep, name: str = "") -> "SimplicialSet":
        """Sub-simplicial set on the generators satisfying ``keep`` (must be face-closed)."""
        gens = {p: [g for g in gs if keep(g)] for p, gs in self.generators.items()}
        kept = {g for gs in gens.values() for g in gs}
        faces = {g: self.faces[g] for g in kept if g in self.faces}
        for g, fs in faces.items():
            for _, h in fs:
                if h not in kept:
                    raise SimplicialError(f"face {h!r} of {g!r} is not kept")
        bp = self.basepoint if self.basepoint in kept else None
        return SimplicialSet(gens, faces, self.truncation, bp, name or self.name, check=False)

    def opposite(self) -> "SimplicialSet":
        """X^op: same simplices, faces d_i replaced by d_{n-i}."""
        faces = {}
        for g, fs in self.faces.items():
            p = self.dim[g]
            faces[g] = tuple(self.reflect(fs[p - i]) for i in range(p + 1))
        bp = self.basepoint
        return SimplicialSet(self.generators, faces, self.truncation, bp, f"{self.name}^op", check=False)

    def reflect(self, x):
        """Representation of the simplex ``x`` under the order-reversal of vertices."""
        s, g = x
        p, q = self.dim[g], len(s) - 1
        return tuple(p - s[q - i] for i in range(q + 1)), g

    # serialization -----------------------------------------------------
    def generator_name(self, g) -> str:
        return f"{self.dim[g]}:{self.index[g]}"

    def to_text(self) -> str:
        lines = [f"N {self.truncation}"]
        if self.basepoint is not None:
            lines.append(f"B {self.generator_name(self.basepoint)}")
        for p, gs in self.generators.items():
            for g in gs:
                fs = self.faces.get(g, ()) if p else ()
                parts = []
                for x in fs:
                    ref = SimplexRef.of(x)
                    parts.append(f"({','.join(map(str, ref.word))}|{self.generator_name(x[1])})")
                lines.append(f"{p} {self.generator_name(g)} : {' '.join(parts)}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, check: bool = True) -> "SimplicialSet":
        gens: dict = {}
        faces: dict = {}
        trunc, bp = 0, None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("N "):
                trunc = int(line.split()[1])
                continue
            if line.startswith("B "):
                bp = line.split()[1]
                continue
            head_parts = line.split(" : ")[0].split()
            p, gid = int(head_parts[0]), head_parts[1]
            gens.setdefault(p, []).append(gid)
            tail = line.split(" : ", 1)[1] if " : " in line else ""
            fs = []
            for tok in tail.split():
                word, ref = tok.strip("()").split("|")
                w = tuple(int(v) for v in word.split(",") if v)
                fs.append(SimplexRef(p - 1, w, ref).simplex())
            if p:
                faces[gid] = tuple(fs)
        return cls(gens, faces, trunc, bp, check=check)

    def __repr__(self):
        return f"SimplicialSet({self.name or '?'}, counts={self.nondegenerate_counts()})"


class SimplicialMap:
    """Map given by the images of generators (simplices of equal dimension)."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images: dict, check: bool = True):
        self.source = source
        self.target = target
        self.images = images
        if check:
            self.validate()

    def __call__(self, x):
        s, g = x
        return self.target.apply(self.images[g], s)

    def validate(self) -> None:
        S, T = self.source, self.target
        for p, gs in S.generators.items():
            for g in gs:
                y = self.images.get(g)
                if y is None or len(y[0]) != p + 1:
                    raise SimplicialError(f"image of {g!r} missing or of wrong dimension")
                for i in range(p + 1 if p else 0):
                    if self(S.face(S.simplex(g), i)) != T.face(y, i):
                        raise SimplicialError(f"map does not commute with d_{i} on {g!r}")

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self ∘ other."""
        return SimplicialMap(other.source, self.target,
                             {g: self(y) for g, y in other.images.items()}, check=False)

    def chain_map(self, src: ChainComplex | None = None, tgt: ChainComplex | None = None,
                  ring: Ring = ZZ, check: bool = True) -> ChainMap:
        src = src or self.source.chains(ring)
        tgt = tgt or self.target.chains(ring)
        maps = {}
        for p in src.ranks:
            cols = {}
            for k, g in enumerate(src.labels[p]):
                s, h = self.images[g]
                if is_identity(s):
                    cols[k] = {self.target.index[h]: 1}
            maps[p] = cols
        return ChainMap(src, tgt, maps, check=check)
