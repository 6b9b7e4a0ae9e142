"""Coefficient rings: the integers, the rationals and prime fields.

Coefficients are plain Python values (``int`` for Z and F_p, ``Fraction``
for Q).  A ring object knows how to coerce, invert units and do the
Euclidean division needed by Smith normal form.
"""
from __future__ import annotations

from fractions import Fraction


class Ring:
    name = "?"
    is_field = False

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, a):
        """Canonical representative after arithmetic (identity except in F_p)."""
        return a

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def size(self, a) -> int:
        """Euclidean size used to choose pivots (0 only for zero)."""
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def normal(self, a):
        """Associate-normal representative (positive for Z, 1 for a field unit)."""
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class Integers(Ring):
    name = "Z"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        return int(x)

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not a unit in Z")
        return a

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        q, r = divmod(a, b)
        # keep remainders small in absolute value
        if 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def normal(self, a):
        return abs(a)


class Rationals(Ring):
    name = "Q"
    is_field = True

    def __call__(self, x):
        return Fraction(x)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        return 1 / Fraction(a)

    def size(self, a):
        return 0 if a == 0 else 1

    def divmod(self, a, b):
        return Fraction(a) / b, Fraction(0)

    def normal(self, a):
        return Fraction(0) if a == 0 else Fraction(1)


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, a):
        return a % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def size(self, a):
        return 0 if a % self.p == 0 else 1

    def divmod(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p, 0

    def normal(self, a):
        return 0 if a % self.p == 0 else 1


ZZ = Integers()
QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_ring(tag: str) -> Ring:
    """Parse ``Z``, ``Q`` or ``Fp`` / ``F_p`` (p prime)."""
    tag = tag.strip()
    if tag in ("Z", "ZZ"):
        return ZZ
    if tag in ("Q", "QQ"):
        return QQ
    if tag.startswith("F"):
        digits = tag[1:].lstrip("_p(").rstrip(")")
        if digits.isdigit():
            return PrimeField(int(digits))
    raise ValueError(f"unknown ring tag {tag!r}; expected Z, Q or Fp with p prime")
