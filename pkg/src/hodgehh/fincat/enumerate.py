"""Enumeration of small finite categories up to isomorphism, and of functors on them."""
from __future__ import annotations

import random
from itertools import combinations_with_replacement, permutations, product as iproduct

from .category import FinCat
from .functors import MOD, SET, CatFunctor, FunctorTable


def _categories_with(k: int, types: tuple):
    """All composition tables on k objects with non-identity arrows of the given types."""
    ids = list(range(k))
    non = list(range(k, k + len(types)))
    src = {x: x for x in ids} | {m: t[0] for m, t in zip(non, types)}
    tgt = {x: x for x in ids} | {m: t[1] for m, t in zip(non, types)}
    homs = {}
    for m in ids + non:
        homs.setdefault((src[m], tgt[m]), []).append(m)
    pairs = [(g, f) for f in non for g in non if tgt[f] == src[g]]
    choices = [homs.get((src[f], tgt[g]), []) for g, f in pairs]
    comp: dict = {}

    def c(g, f):
        if g < k:
            return f
        if f < k:
            return g
        return comp.get((g, f))

    triples = [(h, g, f) for (g, f) in pairs for h in non if src[h] == tgt[g]]
    by_last = {}
    for t in triples:
        h, g, f = t
        by_last.setdefault(max(pairs.index((g, f)), pairs.index((h, g))), []).append(t)

    def ok(t):
        h, g, f = t
        a, b = c(g, f), c(h, g)
        if a is None or b is None:
            return True
        x, y = c(h, a), c(b, f)
        return x is None or y is None or x == y

    def grow(n):
        if n == len(pairs):
            if all(ok(t) and c(t[0], c(t[1], t[2])) is not None and c(c(t[0], t[1]), t[2]) is not None
                   for t in triples):
                yield dict(comp)
            return
        for h in choices[n]:
            comp[pairs[n]] = h
            if all(ok(t) for t in triples):
                yield from grow(n + 1)
            del comp[pairs[n]]

    for table in grow(0):
        yield src, tgt, table


def _canonical_key(k, src, tgt, table, non):
    best = None
    for pi in permutations(range(k)):
        groups = {}
        for m in non:
            groups.setdefault((pi[src[m]], pi[tgt[m]]), []).append(m)
        keys = sorted(groups)
        for perms in iproduct(*[permutations(groups[t]) for t in keys]):
            order = [m for p in perms for m in p]
            name = {x: pi[x] for x in range(k)} | {m: k + n for n, m in enumerate(order)}
            types = tuple((pi[src[m]], pi[tgt[m]]) for m in order)
            comp = tuple(sorted((name[g], name[f], name[h]) for (g, f), h in table.items()))
            key = (types, comp)
            if best is None or key < best:
                best = key
    return best


def small_categories(max_objects: int = 3, max_arrows: int = 3) -> list:
    """Categories with at most ``max_objects`` objects and ``max_arrows``
    non-identity morphisms, one per isomorphism class, in canonical order."""
    seen = {}
    for k in range(1, max_objects + 1):
        cells = [(a, b) for a in range(k) for b in range(k)]
        for e in range(max_arrows + 1):
            for types in combinations_with_replacement(cells, e):
                non = list(range(k, k + e))
                for src, tgt, table in _categories_with(k, types):
                    key = (k, e) + _canonical_key(k, src, tgt, table, non)
                    if key not in seen:
                        seen[key] = key
    out = []
    for key in sorted(seen):
        k, e, types, comp = key
        morphisms = {x: (x, x) for x in range(k)} | {k + n: t for n, t in enumerate(types)}
        table = {(g, f): h for g, f, h in comp}
        for m in morphisms:
            for x in range(k):
                if morphisms[m][0] == x:
                    table[(m, x)] = m
                if morphisms[m][1] == x:
                    table[(x, m)] = m
        out.append(FinCat(range(k), morphisms, table, {x: x for x in range(k)}, f"C{len(out)}"))
    return out


def set_functors(C: FinCat, max_size: int = 3, sizes=None):
    """Every set-valued functor on C with value sizes <= max_size, deterministically."""
    non = C.non_identities()
    size_lists = sizes if sizes is not None else iproduct(range(max_size + 1), repeat=len(C.objects))
    for sz in size_lists:
        size = dict(zip(C.objects, sz))
        maps = {C.identity(x): tuple(range(size[x])) for x in C.objects}

        def consistent():
            for g, f in C.composable():
                if g in maps and f in maps:
                    h = C.compose(g, f)
                    if h in maps and maps[h] != tuple(maps[g][v] for v in maps[f]):
                        return False
            return True

        def grow(n):
            if n == len(non):
                yield FunctorTable(C, SET, dict(size), dict(maps), check=False)
                return
            m = non[n]
            for img in iproduct(range(size[C.target[m]]), repeat=size[C.source[m]]):
                maps[m] = img
                if consistent():
                    yield from grow(n + 1)
            maps.pop(m, None)

        yield from grow(0)


def sample_set_functors(C: FinCat, count: int, max_size: int = 3, seed: int = 0) -> list:
    """A deterministic sample: all functors of total size <= 1 per object, then seeded picks."""
    rng = random.Random(f"{seed}:{C.to_text()}")
    out = list(set_functors(C, 1))
    sizes = [sz for sz in iproduct(range(max_size + 1), repeat=len(C.objects)) if max(sz) > 1]
    rng.shuffle(sizes)
    for sz in sizes:
        if len(out) >= count:
            break
        found = list(_take(set_functors(C, sizes=[sz]), 64))
        if found:
            out.append(rng.choice(found))
    return out[:max(count, 0)] if len(out) > count else out


def _take(it, n):
    for k, x in enumerate(it):
        if k >= n:
            break
        yield x


def linearize(F: FunctorTable, ring=None) -> FunctorTable:
    """Free module functor k[F] with permutation-style matrices."""
    from ..rings import ZZ
    ring = ring or ZZ
    maps = {}
    for m, img in F.maps.items():
        a, b = F.domain.source[m], F.domain.target[m]
        M = [[0] * F.size(a) for _ in range(F.size(b))]
        for j, i in enumerate(img):
            M[i][j] = 1
        maps[m] = M
    return FunctorTable(F.domain, MOD, dict(F.values), maps, ring, check=False)


def sample_module_functors(C: FinCat, count: int, max_rank: int = 2, entries=(-1, 0, 1, 2),
                           attempts: int = 400, seed: int = 0, ring=None) -> list:
    """Module-valued functors: linearized small set functors plus seeded random matrix functors."""
    from ..rings import ZZ
    ring = ring or ZZ
    out = [linearize(F, ring) for F in set_functors(C, max_rank) if all(v <= max_rank for v in F.values.values())]
    rng = random.Random(f"mod:{seed}:{C.to_text()}")
    picked = out[:count // 2] if len(out) > count // 2 else out
    if len(out) > count // 2:
        picked = [out[0]] + rng.sample(out[1:], count // 2 - 1)
    non = C.non_identities()
    extra = []
    for _ in range(attempts):
        if len(picked) + len(extra) >= count:
            break
        rk = {x: rng.randint(0, max_rank) for x in C.objects}
        maps = {C.identity(x): [[int(i == j) for j in range(rk[x])] for i in range(rk[x])] for x in C.objects}
        for m in non:
            maps[m] = [[rng.choice(entries) for _ in range(rk[C.source[m]])] for _ in range(rk[C.target[m]])]
        try:
            extra.append(FunctorTable(C, MOD, rk, maps, ring))
        except ValueError:
            continue
    return picked + extra


def category_functors(I: FinCat, J: FinCat, limit: int | None = None) -> list:
    """Functors I -> J, deterministically ordered (optionally capped)."""
    non = I.non_identities()
    out = []
    for objs in iproduct(J.objects, repeat=len(I.objects)):
        obj = dict(zip(I.objects, objs))
        mor = {I.identity(x): J.identity(obj[x]) for x in I.objects}

        def grow(n):
            if limit is not None and len(out) >= limit:
                return
            if n == len(non):
                try:
                    out.append(CatFunctor(I, J, dict(obj), dict(mor)))
                except ValueError:
                    pass
                return
            m = non[n]
            for img in J.hom(obj[I.source[m]], obj[I.target[m]]):
                mor[m] = img
                grow(n + 1)
            mor.pop(m, None)

        grow(0)
        if limit is not None and len(out) >= limit:
            break
    return out
