"""Coefficient fields used throughout: Q (as fractions.Fraction), prime fields
F_p, and field adapters so polynomial code can run over either.

An adapter exposes `zero`, `one`, `from_int`, `is_zero`, `is_square` and
`sqrt`; elements themselves carry the arithmetic through operator overloading.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def _is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


class RationalField:
    """Adapter for exact rational arithmetic via fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)
    char = 0

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def is_square(a) -> bool:
        a = Fraction(a)
        return _is_square_int(a.numerator) and _is_square_int(a.denominator)

    @staticmethod
    def sqrt(a):
        a = Fraction(a)
        if not RationalField.is_square(a):
            raise ValueError("not a rational square")
        return Fraction(isqrt(a.numerator), isqrt(a.denominator))


QQ = RationalField()


class PrimeFieldElt:
    """Residue in F_p with p an odd prime."""

    __slots__ = ("p", "r")

    def __init__(self, p: int, r: int):
        self.p = p
        self.r = r % p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElt):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return PrimeFieldElt(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElt(self.p, self.r + o.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElt(self.p, self.r - o.r)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElt(self.p, o.r - self.r)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElt(self.p, self.r * o.r)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElt(self.p, -self.r)

    def inverse(self):
        if self.r == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return PrimeFieldElt(self.p, pow(self.r, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElt(self.p, pow(self.r, n, self.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.r == other % self.p
        return isinstance(other, PrimeFieldElt) and self.p == other.p and self.r == other.r

    def __hash__(self):
        return hash((self.p, self.r))

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return f"{self.r} (mod {self.p})"


class PrimeField:
    """Adapter for F_p, p an odd prime."""

    def __init__(self, p: int):
        if p == 2 or p < 2:
            raise ValueError("p must be an odd prime")
        self.p = p
        self.zero = PrimeFieldElt(p, 0)
        self.one = PrimeFieldElt(p, 1)
        self.char = p

    def from_int(self, n):
        if isinstance(n, Fraction):
            return PrimeFieldElt(self.p, n.numerator) / PrimeFieldElt(self.p, n.denominator)
        return PrimeFieldElt(self.p, n)

    def __call__(self, n):
        return self.from_int(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a.r == 0

    def is_square(self, a) -> bool:
        if a.r == 0:
            return True
        return pow(a.r, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Square root in F_p (Tonelli-Shanks)."""
        p = self.p
        n = a.r
        if n == 0:
            return self.zero
        if not self.is_square(a):
            raise ValueError("not a square in F_p")
        if p % 4 == 3:
            return PrimeFieldElt(p, pow(n, (p + 1) // 4, p))
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = tt * tt % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return PrimeFieldElt(p, r)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"
