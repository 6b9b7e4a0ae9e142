"""The twisted arrow construction Tw(X)_n = X_{2n+1} and its projection to X^op × X.

A monotone ``theta: [a] -> [b]`` acts on Tw(X) through the map
``[2a+1] -> [2b+1]`` that reverses ``theta`` on the first half and copies it
on the second; in particular the i-th face is ``d_{n-i} d_{n+1+i}``.
"""
from __future__ import annotations

from functools import lru_cache

from .core import SimplicialError, SimplicialMap, SimplicialSet, codegeneracy, coface, identity_map
from .products import ProductSet, normalize, product


@lru_cache(maxsize=None)
def doubled(theta: tuple, b: int) -> tuple:
    a = len(theta) - 1
    return tuple(b - theta[a - i] for i in range(a + 1)) + tuple(b + 1 + t for t in theta)


class TwistedSet(SimplicialSet):
    """Tw(X) with generators the Tw-nondegenerate simplices of X."""

    base: SimplicialSet

    def tw_apply(self, x, theta: tuple):
        b = (len(x[0]) - 2) // 2
        return self.base.apply(x, doubled(theta, b))

    def canonical(self, x):
        """(surjection, generator) form of an X-simplex viewed in Tw(X)."""
        return _canonical(self.base, x, self._canon_memo)

    def as_x_simplex(self, y):
        """The X-simplex underlying a Tw-simplex in (surjection, generator) form."""
        s, g = y
        return self.tw_apply(g, s)


def _tw_nondegenerate_test(X, x, n):
    for j in range(n):
        f = X.apply(x, doubled(coface(j, n), n))
        if X.apply(f, doubled(codegeneracy(j, n - 1), n - 1)) == x:
            return j, f
    return None


def _canonical(X, x, memo):
    hit = memo.get(x)
    if hit is not None:
        return hit
    n = (len(x[0]) - 2) // 2
    found = _tw_nondegenerate_test(X, x, n) if n > 0 else None
    if found is None:
        out = identity_map(n), x
    else:
        j, f = found
        zs, z = _canonical(X, f, memo)
        out = tuple(zs[v] for v in codegeneracy(j, n - 1)), z
    memo[x] = out
    return out


def twisted(X: SimplicialSet, truncation: int | None = None) -> TwistedSet:
    """Tw(X) up to dimension ``truncation`` (default: as far as X allows)."""
    top = (X.truncation - 1) // 2 if truncation is None else truncation
    if 2 * top + 1 > X.truncation:
        raise SimplicialError(f"Tw up to dimension {top} needs X truncated at >= {2 * top + 1}")
    memo: dict = {}
    gens: dict = {}
    for n in range(top + 1):
        layer = [x for x in X.simplices(2 * n + 1) if n == 0 or _tw_nondegenerate_test(X, x, n) is None]
        if layer:
            gens[n] = layer
    faces = {}
    for n, gs in gens.items():
        if n == 0:
            continue
        for x in gs:
            faces[x] = tuple(_canonical(X, X.apply(x, doubled(coface(i, n), n)), memo) for i in range(n + 1))
    T = TwistedSet(gens, faces, top, None, f"Tw({X.name})", check=False)
    T.base = X
    T._canon_memo = memo
    return T


def monotone_maps(a: int, b: int):
    """All monotone maps [a] -> [b] as tuples."""
    from itertools import combinations_with_replacement
    return [tuple(c) for c in combinations_with_replacement(range(b + 1), a + 1)]


def doubling_is_functorial(top: int) -> bool:
    """doubled(theta ∘ phi) == doubled(theta) ∘ doubled(phi) for all composable maps in dims <= top."""
    for a in range(top + 1):
        for b in range(top + 1):
            for c in range(top + 1):
                for phi in monotone_maps(a, b):
                    for theta in monotone_maps(b, c):
                        comp = tuple(theta[v] for v in phi)
                        lhs = doubled(comp, c)
                        db, dc = doubled(phi, b), doubled(theta, c)
                        if lhs != tuple(dc[v] for v in db):
                            return False
    return True


def check_twisted(T: TwistedSet, top: int | None = None) -> None:
    """Tw(X) is a simplicial set through dimension ``top`` whose structure maps
    are the doubled action on X.

    Checks the face-face identities on generators and that every face and
    degeneracy of a generator agrees with the doubled action on X; since the
    doubling is functorial this gives all simplicial identities.
    """
    top = T.truncation if top is None else min(top, T.truncation)
    if not doubling_is_functorial(min(top, 3)):
        raise SimplicialError("doubling is not functorial")
    for n in range(top + 1):
        for g in T.generators.get(n, []):
            y = T.simplex(g)
            for i in range(n + 1 if n else 0):
                theta = coface(i, n)
                if T.as_x_simplex(T.apply(y, theta)) != T.tw_apply(g, theta):
                    raise SimplicialError(f"face d_{i} of {g!r} disagrees with X")
                for j in range(i if n >= 2 else 0):
                    if T.face(T.face(y, i), j) != T.face(T.face(y, j), i - 1):
                        raise SimplicialError(f"d_{j} d_{i} != d_{i - 1} d_{j} on {g!r}")
            if n < top:
                for j in range(n + 1):
                    theta = codegeneracy(j, n)
                    if T.as_x_simplex(T.apply(y, theta)) != T.tw_apply(g, theta):
                        raise SimplicialError(f"degeneracy s_{j} of {g!r} disagrees with X")


def hom_projection(T: TwistedSet) -> tuple:
    """The map Tw(X) -> X^op × X sending x to (x|[0,n] reversed, x|[n+1,2n+1]).

    Returns ``(target, map)``.
    """
    X = T.base
    Xop = X.opposite()
    P = product(Xop, X, truncation=T.truncation)
    images = {}
    for x, n in T.dim.items():
        first = X.reflect(X.apply(x, tuple(range(n + 1))))
        second = X.apply(x, tuple(range(n + 1, 2 * n + 2)))
        images[x] = normalize([first, second])
    return P, SimplicialMap(T, P, images)


def fiber_vertices(T: TwistedSet, proj: SimplicialMap, a, b) -> list:
    """Vertices of Tw(X) lying over the vertex pair (a, b) of X^op × X."""
    target = (((0,), a), ((0,), b))
    return [x for x in T.generators.get(0, []) if proj.images[x] == ((0,), target)]


def nerve_comparison(C, top: int, T: TwistedSet | None = None) -> tuple:
    """Explicit map N(Tw C) -> Tw(N C) for a finite category C, through dimension ``top``.

    A chain f_0 -> ... -> f_n in Tw C, with arrows (u_i, v_i), goes to the
    (2n+1)-simplex u_n, ..., u_1, f_0, v_1, ..., v_n of N C.  Returns
    ``(map, bijective)`` where ``bijective`` says the map is a bijection on
    nondegenerate simplices in every dimension up to ``top``.
    """
    from .models import nerve, nerve_simplex

    TwC = C.twisted_arrow()
    NT = nerve(TwC, top, check=False)
    if T is None:
        T = twisted(nerve(C, 2 * top + 1, check=False), top)
    images = {}
    for g, n in NT.dim.items():
        f0, arrows = g[0], g[1:]
        us = [a[1] for a in arrows]
        vs = [a[2] for a in arrows]
        start = C.source[us[-1]] if us else C.source[f0]
        string = (start,) + tuple(reversed(us)) + (f0,) + tuple(vs)
        images[g] = T.canonical(nerve_simplex(C, string))
    phi = SimplicialMap(NT, T, images)
    bijective = True
    for n in range(top + 1):
        src = NT.generators.get(n, [])
        imgs = [images[g] for g in src]
        if any(s != identity_map(n) for s, _ in imgs):
            bijective = False
        if len({h for _, h in imgs}) != len(src) or len(src) != len(T.generators.get(n, [])):
            bijective = False
    return phi, bijective
