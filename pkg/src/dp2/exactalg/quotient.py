"""Arithmetic in quotient rings k[t]/(d) for k = Q or F_p.

With d irreducible these are fields; inverses are computed by the extended
Euclidean algorithm.  Squareness of an element over Q(alpha) is decided by a
Trager-style norm computation (resultant, factorization over Q, then GCDs back
over the extension), and over F_p(alpha) by the Euler criterion in F_{p^k}.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .field import PrimeField, RationalField
from .poly import Poly, poly_gcd, poly_xgcd


class QuotientElt:
    __slots__ = ("K", "v")

    def __init__(self, K: "QuotientField", v: Poly):
        self.K = K
        self.v = v % K.modulus if v.degree >= K.modulus.degree else v

    def _coerce(self, other):
        if isinstance(other, QuotientElt):
            return other
        if isinstance(other, int):
            return self.K.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuotientElt(self.K, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuotientElt(self.K, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuotientElt(self.K, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuotientElt(self.K, (self.v * o.v) % self.K.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return QuotientElt(self.K, -self.v)

    def inverse(self):
        g, u, _ = poly_xgcd(self.v, self.K.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("non-invertible element (zero or zero divisor)")
        inv = self.K.base.one / g.lc
        return QuotientElt(self.K, (u.scale(inv)) % self.K.modulus)

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
        acc = self.K.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.v == o.v

    def __bool__(self):
        return not self.v.is_zero()

    def __hash__(self):
        return hash(("QuotientElt", tuple(repr(c) for c in self.v.c)))

    def __repr__(self):
        return f"[{self.v!r}]"


class QuotientField:
    """k[t]/(d) with d squarefree; a field when d is irreducible."""

    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise ValueError("modulus must be non-constant")
        self.base = modulus.field
        self.modulus = modulus.monic()
        self.zero = QuotientElt(self, Poly.zero(self.base))
        self.one = QuotientElt(self, Poly.one(self.base))
        self.gen = QuotientElt(self, Poly.x(self.base))
        self.char = self.base.char

    def from_int(self, n):
        return QuotientElt(self, Poly(self.base, [self.base.from_int(n)]))

    def from_base(self, a):
        return QuotientElt(self, Poly(self.base, [a]))

    def from_poly(self, p: Poly):
        return QuotientElt(self, p % self.modulus)

    @staticmethod
    def is_zero(a) -> bool:
        return a.v.is_zero()

    @property
    def degree(self):
        return self.modulus.degree

    def is_square(self, a: QuotientElt) -> bool:
        if a.v.is_zero():
            return True
        if isinstance(self.base, PrimeField):
            order = self.base.p**self.degree
            return a ** ((order - 1) // 2) == self.one
        if isinstance(self.base, RationalField):
            return self._is_square_trager(a)
        raise NotImplementedError("square test over this base field")

    def _is_square_trager(self, a: QuotientElt) -> bool:
        t, X = sp.symbols("_qt _qX")
        d_expr = sum(sp.Rational(c) * t**i for i, c in enumerate(self.modulus.c))
        c_expr = sum(sp.Rational(c) * t**i for i, c in enumerate(a.v.c))
        for s in range(0, 40):
            norm = sp.resultant(d_expr, (X - s * t) ** 2 - c_expr, t)
            norm_poly = sp.Poly(norm, X)
            if sp.Poly(sp.gcd(norm_poly, norm_poly.diff(X)), X).degree() > 0:
                continue
            _, factors = norm_poly.factor_list()
            f = Poly(self, [-a, self.zero, self.one])  # X^2 - a
            for h, _mult in factors:
                h_shift = self._lift_shift(h, s)
                g = poly_gcd(f, h_shift)
                if g.degree == 1:
                    return True
            return False
        raise RuntimeError("no squarefree norm shift found")

    def _lift_shift(self, h: sp.Poly, s: int) -> Poly:
        """h(X + s*alpha) as a polynomial over this field."""
        coeffs = [Fraction(c.p, c.q) for c in reversed(h.all_coeffs())]
        hK = Poly(self, [self.from_base(c) for c in coeffs])
        shift = self.gen * s
        return hK.compose_linear(self.one, shift)

    def __eq__(self, other):
        return isinstance(other, QuotientField) and self.modulus == other.modulus and self.base == other.base

    def __hash__(self):
        return hash(("QuotientField", tuple(repr(c) for c in self.modulus.c)))

    def __repr__(self):
        return f"{self.base!r}[t]/({self.modulus!r})"
