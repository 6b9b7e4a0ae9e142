"""Finite 1-categories given by an explicit composition table."""
from __future__ import annotations

from itertools import product as iproduct


class CategoryError(ValueError):
    pass


class FinCat:
    """Objects, morphisms with endpoints, identities and a total composition table.

    ``composition[(g, f)]`` is ``g ∘ f`` for every composable pair (target of
    ``f`` equal to source of ``g``).  Associativity and unitality are checked
    on construction.
    """

    def __init__(self, objects, morphisms: dict, composition: dict, identities: dict,
                 name: str = "", check: bool = True):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.source = {m: st[0] for m, st in morphisms.items()}
        self.target = {m: st[1] for m, st in morphisms.items()}
        self.composition = dict(composition)
        self.identities = dict(identities)
        self._ids = set(self.identities.values())
        self.name = name
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((self.source[m], self.target[m]), []).append(m)
        if check:
            self.validate()

    def same_as(self, other: "FinCat") -> bool:
        return self is other or (self.objects == other.objects and self.source == other.source
                                 and self.target == other.target and self.composition == other.composition)

    def compose(self, g, f):
        return self.composition[(g, f)]

    def is_identity(self, m) -> bool:
        return m in self._ids

    def identity(self, x):
        return self.identities[x]

    def hom(self, a, b) -> list:
        return self._hom.get((a, b), [])

    def non_identities(self) -> list:
        return [m for m in self.morphisms if m not in self._ids]

    def composable(self):
        for f in self.morphisms:
            for g in self.morphisms:
                if self.target[f] == self.source[g]:
                    yield g, f

    def validate(self) -> None:
        objs = set(self.objects)
        for m in self.morphisms:
            if self.source[m] not in objs or self.target[m] not in objs:
                raise CategoryError(f"morphism {m!r} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.source.get(i) != x or self.target.get(i) != x:
                raise CategoryError(f"bad identity for object {x!r}")
        for g, f in self.composable():
            h = self.composition.get((g, f))
            if h is None:
                raise CategoryError(f"missing composite {g!r} ∘ {f!r}")
            if self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                raise CategoryError(f"composite {g!r} ∘ {f!r} has the wrong endpoints")
        for m in self.morphisms:
            if self.compose(m, self.identities[self.source[m]]) != m or \
                    self.compose(self.identities[self.target[m]], m) != m:
                raise CategoryError(f"identity law fails at {m!r}")
        for g, f in self.composable():
            for h in self.morphisms:
                if self.source[h] == self.target[g]:
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        raise CategoryError(f"associativity fails at {h!r}, {g!r}, {f!r}")

    def op(self) -> "FinCat":
        """Opposite category, keeping morphism names."""
        morphisms = {m: (self.target[m], self.source[m]) for m in self.morphisms}
        comp = {(f, g): h for (g, f), h in self.composition.items()}
        return FinCat(self.objects, morphisms, comp, self.identities, f"{self.name}^op", check=False)

    def product(self, other: "FinCat") -> "FinCat":
        objects = list(iproduct(self.objects, other.objects))
        morphisms = {(m, n): ((self.source[m], other.source[n]), (self.target[m], other.target[n]))
                     for m in self.morphisms for n in other.morphisms}
        comp = {}
        for g, f in self.composable():
            for g2, f2 in other.composable():
                comp[((g, g2), (f, f2))] = (self.compose(g, f), other.compose(g2, f2))
        ids = {(a, b): (self.identities[a], other.identities[b]) for a, b in objects}
        return FinCat(objects, morphisms, comp, ids, f"{self.name}x{other.name}", check=False)

    def twisted_arrow(self, check: bool = False) -> "FinCat":
        """Classical Tw(C): objects are morphisms f: a -> b; an arrow f -> f' is a
        pair (u: a' -> a, v: b -> b') with f' = v ∘ f ∘ u, named ``(f, u, v)``.

        Cached; ``check=True`` additionally validates the category laws."""
        tw = self.__dict__.get("_tw")
        if tw is None:
            tw = self._build_twisted()
            self._tw = tw
        if check:
            tw.validate()
        return tw

    def _build_twisted(self) -> "FinCat":
        objects = list(self.morphisms)
        morphisms, comp, ids = {}, {}, {}
        for f in objects:
            a, b = self.source[f], self.target[f]
            for u in self.morphisms:
                if self.target[u] != a:
                    continue
                for v in self.morphisms:
                    if self.source[v] != b:
                        continue
                    f2 = self.compose(v, self.compose(f, u))
                    morphisms[(f, u, v)] = (f, f2)
            ids[f] = (f, self.identities[a], self.identities[b])
        for (f, u, v), (_, f2) in morphisms.items():
            for (g, u2, v2), (_, g2) in morphisms.items():
                if g == f2:
                    comp[((g, u2, v2), (f, u, v))] = (f, self.compose(u, u2), self.compose(v2, v))
        return FinCat(objects, morphisms, comp, ids, f"Tw({self.name})", check=False)

    # serialization -----------------------------------------------------
    def to_text(self) -> str:
        """Plain table: object count, morphism triples, composition rows."""
        oi = {x: k for k, x in enumerate(self.objects)}
        mi = {m: k for k, m in enumerate(self.morphisms)}
        lines = [f"objects {len(self.objects)}"]
        for m in self.morphisms:
            tag = " id" if self.is_identity(m) else ""
            lines.append(f"mor {mi[m]} {oi[self.source[m]]} {oi[self.target[m]]}{tag}")
        for (g, f), h in sorted(self.composition.items(), key=lambda kv: (mi[kv[0][0]], mi[kv[0][1]])):
            lines.append(f"comp {mi[g]} {mi[f]} {mi[h]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "FinCat":
        n = 0
        morphisms, comp, ids = {}, {}, {}
        for line in text.splitlines():
            parts = line.split("#", 1)[0].split()
            if not parts:
                continue
            if parts[0] == "objects":
                n = int(parts[1])
            elif parts[0] == "mor":
                m, s, t = map(int, parts[1:4])
                morphisms[m] = (s, t)
                if len(parts) > 4 and parts[4] == "id":
                    ids[s] = m
            elif parts[0] == "comp":
                g, f, h = map(int, parts[1:4])
                comp[(g, f)] = h
            else:
                raise CategoryError(f"unknown line {line!r}")
        return cls(range(n), morphisms, comp, ids, name)

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


# small constructors ------------------------------------------------------------

def discrete(objects, name: str = "") -> FinCat:
    objects = list(objects)
    morphisms = {("id", x): (x, x) for x in objects}
    comp = {(("id", x), ("id", x)): ("id", x) for x in objects}
    return FinCat(objects, morphisms, comp, {x: ("id", x) for x in objects}, name or f"disc{len(objects)}")


def terminal() -> FinCat:
    return discrete([0], "pt")


def poset(elements, leq, name: str = "") -> FinCat:
    """Category of a finite poset; the unique arrow x -> y (x <= y) is ``(x, y)``."""
    elements = list(elements)
    morphisms = {(x, y): (x, y) for x in elements for y in elements if leq(x, y)}
    comp = {((y, z), (x, y)): (x, z) for (x, y) in morphisms for (y2, z) in morphisms if y2 == y}
    return FinCat(elements, morphisms, comp, {x: (x, x) for x in elements}, name)


def ordinal(n: int) -> FinCat:
    """[n] = {0 < 1 < ... < n}."""
    return poset(range(n + 1), lambda a, b: a <= b, f"[{n}]")


def monoid(table, name: str = "") -> FinCat:
    """One-object category from a monoid multiplication table with unit 0."""
    n = len(table)
    morphisms = {m: (0, 0) for m in range(n)}
    comp = {(g, f): table[g][f] for g in range(n) for f in range(n)}
    return FinCat([0], morphisms, comp, {0: 0}, name)


def groupoid_pair() -> FinCat:
    """Two isomorphic objects with one arrow in each direction."""
    morphisms = {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b"), "g": ("b", "a")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f", ("1b", "f"): "f",
            ("g", "1b"): "g", ("1a", "g"): "g", ("g", "f"): "1a", ("f", "g"): "1b"}
    return FinCat(["a", "b"], morphisms, comp, {"a": "1a", "b": "1b"}, "iso")
