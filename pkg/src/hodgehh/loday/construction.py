"""The normalized Loday complex q ↦ R^{⊗X_q}, optionally with coefficients.

A basis tensor in degree q is a sparse assignment of augmentation-ideal basis
elements to q-simplices of X (every other simplex carries the unit).  The
normalized complex is the quotient by degenerate tensors: those whose
support lies in the image of a single degeneracy s_j.  Its basis is the set
of assignments whose supports share no common degeneracy index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from ..chainalg import ChainComplex, ChainMap
from ..simplicial import SimplicialSet
from ..simplicial.core import coface, repeats
from .algebra import AlgModule, AugAlgebra

DEFAULT_RANK_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


def multiply_along(R: AugAlgebra, assign: dict, f) -> dict:
    """Push a basis tensor along a set map: multiply the factors over each fiber.

    ``assign`` maps source points to basis indices (missing points carry the
    unit); ``f`` maps source points to target points.  Returns
    ``{frozen target assignment: coefficient}``.
    """
    fibers: dict = {}
    for s, b in assign.items():
        fibers.setdefault(f[s], []).append(b)
    parts = []
    for t, bs in sorted(fibers.items()):
        prod = R.multiply_all(bs)
        if not prod:
            return {}
        parts.append([(t, b, c) for b, c in sorted(prod.items())])
    red = R.ring.reduce
    out: dict = {}
    for combo in iproduct(*parts):
        coef = R.ring(1)
        key = []
        for t, b, c in combo:
            coef *= c
            if b:
                key.append((t, b))
        k = tuple(key)
        v = red(out.get(k, 0) + coef)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def along_map(R: AugAlgebra, f, source_size: int, target_size: int) -> dict:
    """Matrix of R^{⊗S} -> R^{⊗T} induced by f: S -> T, on full basis tuples.

    Columns and rows are tuples of basis indices (0 = unit); empty fibers
    receive the unit.
    """
    cols = {}
    for src in iproduct(range(R.dim), repeat=source_size):
        img = multiply_along(R, {s: b for s, b in enumerate(src) if b}, f)
        col = {}
        for key, c in img.items():
            tgt = [0] * target_size
            for t, b in key:
                tgt[t] = b
            col[tuple(tgt)] = c
        cols[src] = col
    return cols


@dataclass
class LodayComplex:
    algebra: AugAlgebra
    space: SimplicialSet
    max_degree: int
    weight_bound: int | None
    complex: ChainComplex
    labels: dict
    tags: dict
    module: AlgModule | None = None
    simplices: dict = field(default_factory=dict)

    @property
    def weights(self) -> list:
        return self.complex.weight_values()

    def describe(self, q: int, k: int) -> str:
        """Readable form of basis element k in degree q."""
        lab = self.labels[q][k]
        assign, m = (lab[0], lab[1]) if self.module is not None else (lab, None)
        names = self.algebra.names
        parts = [f"{names[b]}@{t}" for t, b in assign]
        if m is not None:
            parts.append(f"[{self.module.names[m]}]")
        return " ⊗ ".join(parts) or "1"


def _build(R: AugAlgebra, X: SimplicialSet, N: int, W: int | None, module: AlgModule | None,
           rank_budget: int) -> LodayComplex:
    if N + 1 > X.truncation:
        raise ValueError(f"space must be truncated at >= {N + 1}")
    if module is not None and not X.is_reduced:
        raise ValueError("coefficients need a reduced pointed simplicial set")
    ring = R.ring
    red = ring.reduce
    simplices, index_of, face_idx, labels, weights, tags, lookup = {}, {}, {}, {}, {}, {}, {}
    for q in range(N + 2):
        xs = X.simplices(q)
        simplices[q] = xs
        index_of[q] = {x: k for k, x in enumerate(xs)}
        reps = [frozenset(repeats(s)) for s, _ in xs]
        base = None
        if module is not None:
            base = index_of[q][(tuple([0] * (q + 1)), X.basepoint)]
        allowed = set(range(len(xs))) - ({base} if base is not None else set())
        found = _enumerate_degree(R, reps, q, allowed, W, module)
        if len(found) > rank_budget:
            raise BudgetExceeded(f"degree {q} has rank {len(found)} > budget {rank_budget}")
        found.sort(key=lambda e: (e[2], e[3], e[0], -1 if e[1] is None else e[1]))
        labels[q] = [(a, m) if module is not None else a for a, m, _, _ in found]
        weights[q] = [w for _, _, w, _ in found]
        tags[q] = [t for _, _, _, t in found]
        lookup[q] = {lab: k for k, lab in enumerate(labels[q])}
        if q:
            face_idx[q] = [[index_of[q - 1][X.face(x, i)] for x in xs] for i in range(q + 1)]
    d = {}
    for q in range(1, N + 2):
        reps_lo = [frozenset(repeats(s)) for s, _ in simplices[q - 1]]
        base_lo = None
        if module is not None:
            base_lo = index_of[q - 1][(tuple([0] * q), X.basepoint)]
        cols = {}
        for k, lab in enumerate(labels[q]):
            assign, m = (lab if module is not None else (lab, None))
            col: dict = {}
            for i in range(q + 1):
                f = face_idx[q][i]
                sign = 1 if i % 2 == 0 else -1
                img = multiply_along(R, dict(assign), f)
                for key, c in img.items():
                    terms = [(key, m, c)]
                    if module is not None:
                        at_base = [b for t, b in key if t == base_lo]
                        rest = tuple((t, b) for t, b in key if t != base_lo)
                        mv = module.act_vec({at_base[0]: 1} if at_base else {0: 1}, {m: 1})
                        terms = [(rest, m2, c * c2) for m2, c2 in mv.items()]
                    for key2, m2, c2 in terms:
                        common = frozenset(range(q - 1))
                        for t, _ in key2:
                            common &= reps_lo[t]
                        if common:
                            continue
                        row = lookup[q - 1].get((key2, m2) if module is not None else key2)
                        if row is None:
                            continue
                        v = red(col.get(row, 0) + sign * c2)
                        if v:
                            col[row] = v
                        else:
                            col.pop(row, None)
            if col:
                cols[k] = col
        d[q] = cols
    ranks = {q: len(labels[q]) for q in labels}
    C = ChainComplex(ring, ranks, d, labels=labels, weights=weights)
    C.tags = tags
    return LodayComplex(R, X, N, W, C, labels, tags, module, simplices)


def _enumerate_degree(R, reps, q, allowed, W, module):
    ideal = [(b, R.weights[b]) for b in R.ideal()]
    mods = [(m, module.weights[m]) for m in range(module.dim)] if module is not None else [(None, 0)]
    count = len(reps)
    out = []
    for m, mw in mods:
        cap = None if W is None else W - mw
        if cap is not None and cap < 0:
            continue
        acc = []

        def grow(i, used, common):
            if i == count:
                if not common:
                    out.append((tuple(acc), m, used + mw, len(acc)))
                return
            grow(i + 1, used, common)
            if i not in allowed:
                return
            c2 = common & reps[i]
            for b, w in ideal:
                if cap is not None and used + w > cap:
                    continue
                acc.append((i, b))
                grow(i + 1, used + w, c2)
                acc.pop()

        grow(0, 0, frozenset(range(q)))
    return out


def loday_complex(R: AugAlgebra, X: SimplicialSet, N: int, W: int | None = None,
                  rank_budget: int = DEFAULT_RANK_BUDGET) -> LodayComplex:
    """Normalized Loday complex through degree N (degree N+1 built so H_N is exact).

    Only weights <= W are kept; W defaults to the algebra's truncation.
    """
    W = R.truncation if W is None else W
    return _build(R, X, N, W, None, rank_budget)


def loday_with_coefficients(R: AugAlgebra, M: AlgModule, X: SimplicialSet, N: int, W: int | None = None,
                            rank_budget: int = DEFAULT_RANK_BUDGET) -> LodayComplex:
    """Loday complex with M placed at the basepoint simplex of each degree."""
    W = R.truncation if W is None else W
    return _build(R, X, N, W, M, rank_budget)
