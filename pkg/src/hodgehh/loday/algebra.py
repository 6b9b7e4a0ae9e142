"""Augmented weight-graded commutative algebras and their modules.

Basis element 0 is the unit and is the only element of weight 0, so the
augmentation ideal I is spanned by the remaining basis elements.  Products
of weight above the truncation ``W`` are dropped, which is the quotient by
an ideal and keeps every block finite.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement, product as iproduct

from ..rings import QQ, Ring, parse_ring


class AlgebraError(ValueError):
    pass


def _clean(vec: dict, red) -> dict:
    return {k: red(v) for k, v in vec.items() if red(v)}


class AugAlgebra:
    def __init__(self, ring: Ring, names, weights, mul: dict, truncation: int | None = None,
                 name: str = "", check: bool = True):
        self.ring = ring
        self.names = list(names)
        self.weights = list(weights)
        self.truncation = truncation
        self.name = name
        red = ring.reduce
        W = truncation
        self.mul = {}
        for (a, b), vec in mul.items():
            v = {c: ring(x) for c, x in vec.items() if W is None or self.weights[c] <= W}
            self.mul[(a, b)] = _clean(v, red)
        self.index = {n: k for k, n in enumerate(self.names)}
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    def ideal(self) -> list:
        return list(range(1, self.dim))

    def product(self, a: int, b: int) -> dict:
        if a == 0:
            return {b: self.ring(1)}
        if b == 0:
            return {a: self.ring(1)}
        return self.mul.get((a, b), {})

    def multiply(self, u: dict, v: dict) -> dict:
        red = self.ring.reduce
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.product(a, b).items():
                    out[c] = red(out.get(c, 0) + x * y * z)
        return {c: z for c, z in out.items() if z}

    def multiply_all(self, elems) -> dict:
        out = {0: self.ring(1)}
        for e in elems:
            out = self.multiply(out, {e: self.ring(1)})
            if not out:
                break
        return out

    def augmentation(self, a: int):
        return self.ring(1) if a == 0 else self.ring(0)

    def validate(self) -> None:
        if not self.names or self.weights[0] != 0:
            raise AlgebraError("basis element 0 must be the unit, of weight 0")
        if any(w <= 0 for w in self.weights[1:]):
            raise AlgebraError("augmentation ideal must be spanned by positive-weight basis elements")
        n = self.dim
        for a in range(1, n):
            for b in range(1, n):
                for c in self.product(a, b):
                    if self.weights[c] != self.weights[a] + self.weights[b]:
                        raise AlgebraError(f"product {self.names[a]}*{self.names[b]} is not weight homogeneous")
                if self.product(a, b) != self.product(b, a):
                    raise AlgebraError(f"not commutative at {self.names[a]}, {self.names[b]}")
        for a, b, c in iproduct(range(1, n), repeat=3):
            lhs = self.multiply(self.product(a, b), {c: 1})
            rhs = self.multiply({a: 1}, self.product(b, c))
            if lhs != rhs:
                raise AlgebraError(f"not associative at {self.names[a]}, {self.names[b]}, {self.names[c]}")

    def basis_of_weight(self, w: int) -> list:
        return [k for k, x in enumerate(self.weights) if x == w]

    def to_text(self) -> str:
        lines = [f"RING {self.ring.name}"]
        if self.truncation is not None:
            lines.append(f"TRUNCATE {self.truncation}")
        for n, w in zip(self.names, self.weights):
            lines.append(f"BASIS {n} {w}")
        for a in range(1, self.dim):
            for b in range(1, self.dim):
                v = self.product(a, b)
                rhs = " + ".join(f"{x} {self.names[c]}" for c, x in sorted(v.items())) or "0"
                lines.append(f"MUL {self.names[a]} {self.names[b]} -> {rhs}")
        lines.append(f"AUG {self.names[0]}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"AugAlgebra({self.name or '?'} over {self.ring}, dim {self.dim}, W={self.truncation})"


_TERM = re.compile(r"^\s*([+-]?\s*[0-9/]*)\s*\*?\s*([A-Za-z_][\w^]*)\s*$")


def _parse_rhs(text: str, index: dict) -> dict:
    text = text.strip()
    if text in ("0", ""):
        return {}
    out: dict = {}
    for term in re.split(r"(?=[+-])", text.replace(" ", "")):
        if not term:
            continue
        m = _TERM.match(term)
        if not m:
            raise AlgebraError(f"cannot parse term {term!r}")
        coef, name = m.group(1).replace(" ", ""), m.group(2)
        if coef in ("", "+"):
            c = Fraction(1)
        elif coef == "-":
            c = Fraction(-1)
        else:
            c = Fraction(coef)
        if name not in index:
            raise AlgebraError(f"unknown basis element {name!r}")
        out[index[name]] = out.get(index[name], 0) + c
    return out


def parse_algebra(text: str, name: str = "") -> AugAlgebra:
    """Plain-text algebra: RING, TRUNCATE?, BASIS name weight, MUL a b -> Σ c e, AUG unit."""
    ring, trunc = QQ, None
    names, weights, mul, aug = [], [], {}, None
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "RING":
            ring = parse_ring(rest)
        elif key == "TRUNCATE":
            trunc = int(rest)
        elif key == "BASIS":
            n, w = rest.split()
            names.append(n)
            weights.append(int(w))
        elif key == "MUL":
            rows.append(rest)
        elif key == "AUG":
            aug = rest.split()
        else:
            raise AlgebraError(f"unknown section {key!r}")
    if not names:
        raise AlgebraError("no BASIS rows")
    if aug is None or aug[0] != names[0]:
        raise AlgebraError("AUG must name the unit, which must be the first BASIS row")
    index = {n: k for k, n in enumerate(names)}
    for row in rows:
        lhs, _, rhs = row.partition("->")
        a, b = lhs.split()
        if a not in index or b not in index:
            raise AlgebraError(f"unknown basis element in MUL {row!r}")
        mul[(index[a], index[b])] = _parse_rhs(rhs, index)
    for a in range(1, len(names)):
        for b in range(1, len(names)):
            if (a, b) not in mul and (b, a) in mul:
                mul[(a, b)] = mul[(b, a)]
            mul.setdefault((a, b), {})
    if trunc is not None:
        keep = [k for k, w in enumerate(weights) if w <= trunc]
        if len(keep) != len(names):
            raise AlgebraError("BASIS lists elements above the truncation weight")
    return AugAlgebra(ring, names, weights, mul, trunc, name)


# factories ---------------------------------------------------------------------

def _monomial_name(exps, variables) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts) or "1"


def polynomial(variables="x", truncation: int | None = 4, ring: Ring = QQ, relations_degree=None) -> AugAlgebra:
    """k[x_1..x_r] truncated at total degree W (monomials of degree > W set to 0).

    ``relations_degree`` instead imposes x_i^e = 0 for e >= that bound; the
    algebra is then finite and carries no truncation.
    """
    variables = list(variables)
    r = len(variables)
    top = relations_degree - 1 if relations_degree else truncation
    if relations_degree:
        truncation = None
    span = r * top if truncation is None else truncation
    monos = [e for d in range(span + 1)
             for e in sorted((e for e in iproduct(range(d + 1), repeat=r) if sum(e) == d), reverse=True)
             if max(e, default=0) <= top]
    index = {e: k for k, e in enumerate(monos)}
    mul = {}
    for a in range(1, len(monos)):
        for b in range(1, len(monos)):
            e = tuple(x + y for x, y in zip(monos[a], monos[b]))
            mul[(a, b)] = {index[e]: 1} if e in index else {}
    names = [_monomial_name(e, variables) for e in monos]
    label = f"{ring}[{','.join(variables)}]"
    if relations_degree:
        label += "/(" + ",".join(f"{v}^{relations_degree}" for v in variables) + ")"
    return AugAlgebra(ring, names, [sum(e) for e in monos], mul, truncation, label)


def truncated_polynomial(n: int, ring: Ring = QQ, variable: str = "x") -> AugAlgebra:
    """k[x]/(x^n) with x of weight 1."""
    return polynomial(variable, None, ring, relations_degree=n)


def dual_numbers(ring: Ring = QQ) -> AugAlgebra:
    A = truncated_polynomial(2, ring=ring)
    A.name = f"{ring}[x]/(x^2)"
    return A


def ground(ring: Ring = QQ) -> AugAlgebra:
    return AugAlgebra(ring, ["1"], [0], {}, 0, str(ring))


class AlgModule:
    """Module over an AugAlgebra: weighted basis and ``act[(a, m)] = {m': c}``."""

    def __init__(self, algebra: AugAlgebra, names, weights, act: dict, name: str = "", check: bool = True):
        self.algebra = algebra
        self.names = list(names)
        self.weights = list(weights)
        W = algebra.truncation
        self.act = {k: {m: algebra.ring(c) for m, c in v.items() if c and (W is None or self.weights[m] <= W)}
                    for k, v in act.items()}
        self.name = name
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    def action(self, a: int, m: int) -> dict:
        if a == 0:
            return {m: self.algebra.ring(1)}
        return self.act.get((a, m), {})

    def act_vec(self, u: dict, v: dict) -> dict:
        red = self.algebra.ring.reduce
        out: dict = {}
        for a, x in u.items():
            for m, y in v.items():
                for n, z in self.action(a, m).items():
                    out[n] = red(out.get(n, 0) + x * y * z)
        return {n: z for n, z in out.items() if z}

    def validate(self) -> None:
        R = self.algebra
        for a in range(1, R.dim):
            for m in range(self.dim):
                for n in self.action(a, m):
                    if self.weights[n] != self.weights[m] + R.weights[a]:
                        raise AlgebraError("module action is not weight homogeneous")
        for a, b in combinations_with_replacement(range(1, R.dim), 2):
            for m in range(self.dim):
                lhs = self.act_vec(R.product(a, b), {m: 1})
                rhs = self.act_vec({a: 1}, self.act_vec({b: 1}, {m: 1}))
                if lhs != rhs:
                    raise AlgebraError(f"module action not associative at {R.names[a]}, {R.names[b]}")


def free_module(R: AugAlgebra) -> AlgModule:
    act = {(a, m): R.product(a, m) for a in range(1, R.dim) for m in range(R.dim)}
    return AlgModule(R, R.names, R.weights, act, f"{R.name}")


def augmentation_module(R: AugAlgebra) -> AlgModule:
    """k with I acting by zero."""
    return AlgModule(R, ["k"], [0], {}, "k")
