"""Natural transformations, ends, coends, colimits and pointwise left Kan extensions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .category import CategoryError, FinCat
from .functors import MOD, SET, Bifunctor, CatFunctor, FunctorTable
from .modules import PresentedModule, direct_sum


def nat_transformations(F: FunctorTable, G: FunctorTable) -> list:
    """All natural transformations F => G of set-valued functors.

    A transformation is a tuple of components, one per object in the domain's
    object order; each component is a tuple of images.
    """
    if not F.domain.same_as(G.domain):
        raise CategoryError("functors have different domains")
    if F.kind != SET or G.kind != SET:
        raise CategoryError("nat_transformations needs set-valued functors")
    C = F.domain
    objs = C.objects
    pos = {x: k for k, x in enumerate(objs)}
    checks = [[] for _ in objs]   # morphisms whose endpoints are all assigned at step k
    for m in C.non_identities():
        checks[max(pos[C.source[m]], pos[C.target[m]])].append(m)
    out, comp = [], [None] * len(objs)

    def grow(k):
        if k == len(objs):
            out.append(tuple(comp))
            return
        x = objs[k]
        for eta in iproduct(range(G.size(x)), repeat=F.size(x)):
            comp[k] = eta
            ok = True
            for m in checks[k]:
                a, b = pos[C.source[m]], pos[C.target[m]]
                Fm, Gm = F.maps[m], G.maps[m]
                if any(Gm[comp[a][v]] != comp[b][Fm[v]] for v in range(F.size(C.source[m]))):
                    ok = False
                    break
            if ok:
                grow(k + 1)
        comp[k] = None

    grow(0)
    return out


def end_bifunctor(T: Bifunctor) -> list:
    """Equalizer of ∏_c T(c, c) ⇉ ∏_{f: c -> c'} T(c, c'), as families of elements."""
    if T.kind != SET:
        raise CategoryError("end_bifunctor needs a set-valued bifunctor")
    I = T.base
    objs = I.objects
    pos = {x: k for k, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in I.non_identities():
        checks[max(pos[I.source[f]], pos[I.target[f]])].append(f)
    out, fam = [], [None] * len(objs)

    def grow(k):
        if k == len(objs):
            out.append(tuple(fam))
            return
        x = objs[k]
        for t in range(T.values[(x, x)]):
            fam[k] = t
            ok = True
            for f in checks[k]:
                c, c2 = I.source[f], I.target[f]
                push = T.act(I.identity(c), f)[fam[pos[c]]]
                pull = T.act(f, I.identity(c2))[fam[pos[c2]]]
                if push != pull:
                    ok = False
                    break
            if ok:
                grow(k + 1)
        fam[k] = None

    grow(0)
    return out


def end_as_families(T: Bifunctor, end: list) -> list:
    """Translate end elements of a hom bifunctor into component tuples."""
    objs = T.base.objects
    return [tuple(T.elements[(x, x)][t] for x, t in zip(objs, fam)) for fam in end]


def limit_set(F: FunctorTable) -> list:
    """Limit of a set-valued functor: compatible families over all objects."""
    C = F.domain
    objs = C.objects
    pos = {x: k for k, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for m in C.non_identities():
        checks[max(pos[C.source[m]], pos[C.target[m]])].append(m)
    out, fam = [], [None] * len(objs)

    def grow(k):
        if k == len(objs):
            out.append(tuple(fam))
            return
        for t in range(F.size(objs[k])):
            fam[k] = t
            if all(F.maps[m][fam[pos[C.source[m]]]] == fam[pos[C.target[m]]] for m in checks[k]):
                grow(k + 1)
        fam[k] = None

    grow(0)
    return out


def twisted_restriction(T: Bifunctor) -> FunctorTable:
    """The functor Tw(I) -> Set, (f: a -> b) ↦ T(a, b), whose limit is the end."""
    I = T.base
    Tw = I.twisted_arrow()
    values = {f: T.values[(I.source[f], I.target[f])] for f in Tw.objects}
    maps = {(f, u, v): T.act(u, v) for (f, u, v) in Tw.morphisms}
    return FunctorTable(Tw, T.kind, values, maps, T.ring, check=False)


def end_via_twisted(T: Bifunctor) -> list:
    """End computed as a limit over the classical twisted arrow category.

    Families are returned restricted to identity arrows, matching
    :func:`end_bifunctor`.
    """
    I = T.base
    F = twisted_restriction(T)
    pos = {f: k for k, f in enumerate(F.domain.objects)}
    return [tuple(fam[pos[I.identity(x)]] for x in I.objects) for fam in limit_set(F)]


# module-valued colimits ----------------------------------------------------------

def _embed(vec, offset, n):
    v = [0] * n
    for i, x in enumerate(vec):
        if x:
            v[offset + i] = x
    return v


def coend_bifunctor(T: Bifunctor) -> PresentedModule:
    """Coequalizer of ⊕_{f: c -> c'} T(c', c) ⇉ ⊕_c T(c, c)."""
    if T.kind != MOD:
        raise CategoryError("coend_bifunctor needs a module-valued bifunctor")
    I = T.base
    diag = [T.values[(x, x)] for x in I.objects]
    S, offs = direct_sum(diag)
    off = dict(zip(I.objects, offs))
    rels = list(S.relations)
    red = T.ring.reduce
    for f in I.non_identities():
        c, c2 = I.source[f], I.target[f]
        A = T.act(f, I.identity(c))       # T(c', c) -> T(c, c)
        B = T.act(I.identity(c2), f)      # T(c', c) -> T(c', c')
        for j in range(T.values[(c2, c)].ngens):
            v = _embed([row[j] for row in A], off[c], S.ngens)
            w = _embed([row[j] for row in B], off[c2], S.ngens)
            rel = [red(a - b) for a, b in zip(v, w)]
            if any(rel):
                rels.append(rel)
    return PresentedModule(S.ngens, rels, T.ring)


def colimit(F: FunctorTable):
    """Colimit: a PresentedModule for module-valued F, the class count for set-valued F."""
    C = F.domain
    if F.kind == SET:
        return len(colimit_classes(F)[1])
    S, offs = direct_sum([F.values[x] for x in C.objects])
    off = dict(zip(C.objects, offs))
    rels = list(S.relations)
    red = F.ring.reduce
    for m in C.non_identities():
        a, b = C.source[m], C.target[m]
        M = F.maps[m]
        for j in range(F.size(a)):
            v = _embed([row[j] for row in M], off[b], S.ngens)
            v[off[a] + j] = red(v[off[a] + j] - 1)
            if any(v):
                rels.append(v)
    return PresentedModule(S.ngens, rels, F.ring)


def colimit_classes(F: FunctorTable):
    """Union-find quotient of the disjoint union; returns (class_of, classes)."""
    C = F.domain
    parent = {}
    for x in C.objects:
        for e in range(F.size(x)):
            parent[(x, e)] = (x, e)

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for m in C.non_identities():
        a, b = C.source[m], C.target[m]
        for e in range(F.size(a)):
            ru, rv = find((a, e)), find((b, F.maps[m][e]))
            if ru != rv:
                parent[max(ru, rv, key=repr)] = min(ru, rv, key=repr)
    keys = list(parent)
    roots = []
    for u in keys:
        r = find(u)
        if r not in roots:
            roots.append(r)
    idx = {r: k for k, r in enumerate(roots)}
    return {u: idx[find(u)] for u in keys}, roots


@dataclass
class KanExtension:
    """Pointwise left Kan extension with its comma categories and unit."""
    functor: FunctorTable
    comma: dict          # j -> list of (z, g: i(z) -> j)
    unit: dict           # z -> map G(z) -> i_!G(i(z))


def left_kan(i: CatFunctor, G: FunctorTable) -> KanExtension:
    """i_!G(j) = colim over (z, g: i(z) -> j) of G(z)."""
    I, J = i.source, i.target
    if not G.domain.same_as(I):
        raise CategoryError("G must be defined on the source of i")
    comma = {j: [(z, g) for z in I.objects for g in J.hom(i.obj[z], j)] for j in J.objects}
    values, maps, unit = {}, {}, {}
    if G.kind == MOD:
        offsets = {}
        for j, objs in comma.items():
            S, offs = direct_sum([G.values[z] for z, _ in objs])
            offsets[j] = dict(zip(objs, offs))
            rels = list(S.relations)
            red = G.ring.reduce
            for (z, g) in objs:
                for h in I.non_identities():
                    if I.source[h] != z:
                        continue
                    z2 = I.target[h]
                    for g2 in J.hom(i.obj[z2], j):
                        if J.compose(g2, i.mor[h]) != g:
                            continue
                        M = G.maps[h]
                        for c in range(G.size(z)):
                            v = _embed([row[c] for row in M], offsets[j][(z2, g2)], S.ngens)
                            k = offsets[j][(z, g)] + c
                            v[k] = red(v[k] - 1)
                            if any(v):
                                rels.append(v)
            values[j] = PresentedModule(S.ngens, rels, G.ring)
        for phi in J.morphisms:
            j, j2 = J.source[phi], J.target[phi]
            M = [[0] * values[j].ngens for _ in range(values[j2].ngens)]
            for (z, g), o in offsets[j].items():
                o2 = offsets[j2][(z, J.compose(phi, g))]
                for c in range(G.size(z)):
                    M[o2 + c][o + c] = 1
            maps[phi] = M
        for z in I.objects:
            j = i.obj[z]
            o = offsets[j][(z, J.identity(j))]
            unit[z] = [[1 if r == o + c else 0 for c in range(G.size(z))] for r in range(values[j].ngens)]
        return KanExtension(FunctorTable(J, MOD, values, maps, G.ring, check=False), comma, unit)
    classes = {}
    for j, objs in comma.items():
        sub = FinCat(objs, *_comma_structure(i, j, objs), check=False)
        H = FunctorTable(sub, SET, {o: G.size(o[0]) for o in objs},
                         {m: G.maps[m[0]] for m in sub.morphisms}, check=False)
        class_of, roots = colimit_classes(H)
        classes[j] = class_of
        values[j] = len(roots)
    for phi in J.morphisms:
        j, j2 = J.source[phi], J.target[phi]
        out = [None] * values[j]
        for ((z, g), e), k in classes[j].items():
            out[k] = classes[j2][((z, J.compose(phi, g)), e)]
        maps[phi] = tuple(out)
    for z in I.objects:
        j = i.obj[z]
        unit[z] = tuple(classes[j][((z, J.identity(j)), e)] for e in range(G.size(z)))
    return KanExtension(FunctorTable(J, SET, values, maps, check=False), comma, unit)


def _comma_structure(i: CatFunctor, j, objs):
    I, J = i.source, i.target
    morphisms, comp, ids = {}, {}, {}
    for (z, g) in objs:
        ids[(z, g)] = (I.identity(z), (z, g))
        for h in I.morphisms:
            if I.source[h] != z:
                continue
            z2 = I.target[h]
            for g2 in J.hom(i.obj[z2], j):
                if J.compose(g2, i.mor[h]) == g:
                    morphisms[(h, (z, g))] = ((z, g), (z2, g2))
    for m1, (s1, t1) in morphisms.items():
        for m2, (s2, t2) in morphisms.items():
            if s2 == t1:
                comp[(m2, m1)] = (I.compose(m2[0], m1[0]), s1)
    return morphisms, comp, ids
