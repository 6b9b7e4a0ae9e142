"""Standard models: simplices, spheres, the circle, nerves and degree-r circle maps."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import SimplicialError, SimplicialMap, SimplicialSet, identity_map

DEFAULT_TRUNCATION = 8


def standard_simplex(k: int, truncation: int | None = None) -> SimplicialSet:
    """Delta^k; generators are the vertex tuples of its faces."""
    N = k if truncation is None else truncation
    gens = {p: [c for c in combinations(range(k + 1), p + 1)] for p in range(k + 1)}
    faces = {c: tuple(((tuple(range(len(c) - 1))), c[:i] + c[i + 1:]) for i in range(len(c)))
             for p, cs in gens.items() if p for c in cs}
    return SimplicialSet(gens, faces, N, basepoint=(0,), name=f"Delta^{k}")


def point(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    return SimplicialSet({0: ["*"]}, {}, truncation, basepoint="*", name="point")


def standard_sphere(d: int, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """Delta^d modulo its boundary: a basepoint and one d-dimensional generator."""
    if d <= 0:
        raise SimplicialError("sphere dimension must be positive")
    top = f"e{d}"
    collapsed = (tuple([0] * d), "*")
    return SimplicialSet({0: ["*"], d: [top]}, {top: tuple([collapsed] * (d + 1))},
                         max(truncation, d), basepoint="*", name=f"S^{d}")


def standard_circle(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    X = standard_sphere(1, truncation)
    X.name = "S^1"
    return X


def nerve(C, truncation: int, check: bool = True) -> SimplicialSet:
    """Nerve of a finite category, truncated.

    A generator is ``(x_0, m_1, ..., m_p)``: a source object followed by a
    composable string of non-identity morphisms.
    """
    gens = {0: [(x,) for x in C.objects]}
    faces = {}
    for p in range(1, truncation + 1):
        layer = []
        for g in gens[p - 1]:
            end = C.target[g[-1]] if p > 1 else g[0]
            for m in C.morphisms:
                if C.source[m] == end and not C.is_identity(m):
                    layer.append(g + (m,))
        if not layer:
            break
        gens[p] = layer
        for g in layer:
            faces[g] = tuple(_nerve_normal(C, _nerve_face(C, g, i)) for i in range(p + 1))
    return SimplicialSet(gens, faces, truncation, name="nerve", check=check)


def _nerve_face(C, g, i):
    x0, ms = g[0], list(g[1:])
    p = len(ms)
    if i == 0:
        return (C.target[ms[0]],) + tuple(ms[1:])
    if i == p:
        return (x0,) + tuple(ms[:-1])
    return (x0,) + tuple(ms[:i - 1]) + (C.compose(ms[i], ms[i - 1]),) + tuple(ms[i + 1:])


def _nerve_normal(C, string):
    """Simplex (surjection, generator) of a possibly degenerate nerve string."""
    x0, ms = string[0], string[1:]
    s, c = [0], 0
    kept = []
    for m in ms:
        if not C.is_identity(m):
            c += 1
            kept.append(m)
        s.append(c)
    return tuple(s), (x0,) + tuple(kept)


def nerve_simplex(C, string):
    return _nerve_normal(C, string)


@dataclass
class DegreeMap:
    """A model ``C_r`` of the circle with maps ``c, w: C_r -> S^1``.

    ``w`` is a weak equivalence and ``c`` has degree ``r`` relative to it, so
    the composite ``H(c) H(w)^{-1}`` is multiplication by ``r`` on H_1.
    """
    r: int
    space: SimplicialSet
    map: SimplicialMap
    equivalence: SimplicialMap


def degree_map(r: int, truncation: int = DEFAULT_TRUNCATION) -> DegreeMap:
    S = standard_circle(truncation)
    e, base = S.simplex("e1"), ((0, 0), "*")
    if r == 0:
        ident = SimplicialMap(S, S, {"*": S.simplex("*"), "e1": e})
        const = SimplicialMap(S, S, {"*": S.simplex("*"), "e1": base})
        return DegreeMap(0, S, const, ident)
    k = abs(r)
    edge = (0,)
    if r > 0:
        verts = [f"p{i}" for i in range(k)]
        edges = [f"a{i}" for i in range(k)]
        faces = {f"a{i}": ((edge, verts[(i + 1) % k]), (edge, verts[i])) for i in range(k)}
        C = SimplicialSet({0: verts, 1: edges}, faces, truncation, basepoint="p0", name=f"C_{r}")
        pts = {v: S.simplex("*") for v in verts}
        c = SimplicialMap(C, S, {**pts, **{a: e for a in edges}})
        w = SimplicialMap(C, S, {**pts, **{a: (e if a == "a0" else base) for a in edges}})
    else:
        verts = [f"p{i}" for i in range(k + 1)]
        edges = [f"a{i}" for i in range(k)] + ["b"]
        faces = {f"a{i}": ((edge, verts[i + 1]), (edge, verts[i])) for i in range(k)}
        faces["b"] = ((edge, verts[k]), (edge, verts[0]))
        C = SimplicialSet({0: verts, 1: edges}, faces, truncation, basepoint="p0", name=f"C_{r}")
        pts = {v: S.simplex("*") for v in verts}
        c = SimplicialMap(C, S, {**pts, **{a: (base if a == "b" else e) for a in edges}})
        w = SimplicialMap(C, S, {**pts, **{a: (e if a == "b" else base) for a in edges}})
    return DegreeMap(r, C, c, w)


__all__ = ["standard_simplex", "point", "standard_sphere", "standard_circle", "nerve",
           "nerve_simplex", "DegreeMap", "degree_map", "identity_map"]
