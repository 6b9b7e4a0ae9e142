"""Homotopy limits of chain-complex diagrams over finite posets.

The diagram ``D`` is contravariant: for ``x <= y`` it supplies a chain map
``D(y) -> D(x)``.  The limit is taken over the category whose arrows run
from larger to smaller elements, so a poset with a maximum element gives
back the value at the maximum.

The model is the normalized cosimplicial (Bousfield–Kan / Roos) totalization

    Tot_t = ∏_{x_0 > x_1 > ... > x_p} D(x_p)_{t + p}

with differential ``d_int + (-1)^t δ`` on elements of total degree ``t``.
"""
from __future__ import annotations

from itertools import combinations

from .complex import ChainComplex, ChainComplexError, ChainMap, vec_add


class DiagramError(ChainComplexError):
    pass


class PosetDiagram:
    """Finite poset with a contravariant diagram of chain complexes.

    ``values[x]`` is a ChainComplex; ``maps[(y, x)]`` is the chain map
    ``D(y) -> D(x)`` for every strict relation ``x < y``.
    """

    def __init__(self, elements, less, values: dict, maps: dict, check: bool = True):
        self.elements = list(elements)
        self.less = less
        self.values = values
        self.maps = maps
        if check:
            self.validate()

    def validate(self):
        els = self.elements
        for y in els:
            for x in els:
                if self.less(x, y) and (y, x) not in self.maps:
                    raise DiagramError(f"missing structure map D({y!r}) -> D({x!r})")
        red = None
        for z in els:
            for y in els:
                if not self.less(y, z):
                    continue
                for x in els:
                    if not self.less(x, y):
                        continue
                    f_zy, f_yx, f_zx = self.maps[(z, y)], self.maps[(y, x)], self.maps[(z, x)]
                    red = f_zx.ring.reduce
                    for n, r in self.values[z].ranks.items():
                        for j in range(r):
                            a = f_yx.apply(f_zy.apply({j: 1}, n), n)
                            b = f_zx.apply({j: 1}, n)
                            diff = dict(a)
                            vec_add(diff, b, -1, red)
                            if diff:
                                raise DiagramError(
                                    f"non-commuting square {z!r} -> {y!r} -> {x!r} at degree {n}, basis {j}")

    def chains(self):
        """Strictly decreasing chains x_0 > ... > x_p, deterministically ordered."""
        els = self.elements
        below = {y: [x for x in els if self.less(x, y)] for y in els}
        out = []

        def grow(chain):
            out.append(tuple(chain))
            for x in below[chain[-1]]:
                chain.append(x)
                grow(chain)
                chain.pop()

        for y in els:
            grow([y])
        out.sort(key=lambda c: (len(c), [els.index(x) for x in c]))
        return out


class Totalization:
    """The total complex together with its bookkeeping.

    ``basis[t]`` lists ``(chain, j)`` pairs: component ``chain`` (a tuple of
    poset elements) and basis index ``j`` of ``D(chain[-1])`` in degree
    ``t + len(chain) - 1``.
    """

    def __init__(self, diagram: PosetDiagram, chains=None):
        self.diagram = diagram
        D = diagram
        self.chains = D.chains() if chains is None else list(chains)
        chain_set = set(self.chains)
        ring = next(iter(D.values.values())).ring
        red = ring.reduce
        basis: dict = {}
        for ch in self.chains:
            p = len(ch) - 1
            V = D.values[ch[-1]]
            for q, r in sorted(V.ranks.items()):
                for j in range(r):
                    basis.setdefault(q - p, []).append((ch, j))
        index = {t: {e: k for k, e in enumerate(es)} for t, es in basis.items()}
        self.basis, self.index = basis, index
        d = {}
        for t, es in basis.items():
            cols = {}
            below = index.get(t - 1, {})
            sign = -1 if t % 2 else 1
            for k, (ch, j) in enumerate(es):
                p = len(ch) - 1
                q = t + p
                col: dict = {}
                V = D.values[ch[-1]]
                for i, x in V.d.get(q, {}).get(j, {}).items():
                    vec_add(col, {below[(ch, i)]: x}, 1, red)
                # insertions before the last element
                for pos in range(p + 1):
                    hi = ch[pos - 1] if pos > 0 else None
                    lo = ch[pos]
                    for x in D.elements:
                        if D.less(lo, x) and (hi is None or D.less(x, hi)):
                            new = ch[:pos] + (x,) + ch[pos:]
                            if new in chain_set:
                                c = sign * (-1) ** pos
                                vec_add(col, {below[(new, j)]: c}, 1, red)
                # appending a smaller element, through the structure map
                last = ch[-1]
                for x in D.elements:
                    if D.less(x, last):
                        new = ch + (x,)
                        if new not in chain_set:
                            continue
                        img = D.maps[(last, x)].apply({j: 1}, q)
                        c = sign * (-1) ** (p + 1)
                        for i, v in img.items():
                            vec_add(col, {below[(new, i)]: c * v}, 1, red)
                if col:
                    cols[k] = col
            d[t] = cols
        ranks = {t: len(es) for t, es in basis.items()}
        self.complex = ChainComplex(ring, ranks, d, labels=basis)

    def component(self, vec: dict, t: int, chain) -> dict:
        """Restrict a total-degree-``t`` vector to one chain's component."""
        return {j: v for k, v in vec.items() for (ch, j) in [self.basis[t][k]] if ch == chain}

    def restriction_to(self, other: "Totalization") -> ChainMap:
        """Projection onto a sub-diagram's totalization (chains ⊆ self.chains)."""
        maps = {}
        for t, es in self.basis.items():
            idx = other.index.get(t, {})
            maps[t] = {k: {idx[e]: 1} for k, e in enumerate(es) if e in idx}
        return ChainMap(self.complex, other.complex, maps)


def poset_holim(elements, less, values: dict, maps: dict, check: bool = True) -> Totalization:
    """Derived limit of a contravariant diagram of complexes over a finite poset."""
    return Totalization(PosetDiagram(elements, less, values, maps, check=check))


def comparison_to_holim(total: Totalization, source: ChainComplex, projections: dict) -> ChainMap:
    """Chain map ``source -> Tot`` from a cone ``source -> D(x)`` over the diagram.

    ``projections[x]`` is a chain map ``source -> D(x)`` for every element; the
    cone condition (compatibility with structure maps) makes the result a chain
    map, which is validated.
    """
    maps = {}
    for n, r in source.ranks.items():
        idx = total.index.get(n, {})
        cols = {}
        for j in range(r):
            col = {}
            for x, f in projections.items():
                for i, v in f.apply({j: 1}, n).items():
                    col[idx[((x,), i)]] = v
            if col:
                cols[j] = col
        maps[n] = cols
    return ChainMap(source, total.complex, maps)


def subsets_upto(m: int, n: int):
    """Subsets of {0..m-1} of size <= n, ordered by size then lexicographically."""
    return [frozenset(c) for k in range(min(n, m) + 1) for c in combinations(range(m), k)]

