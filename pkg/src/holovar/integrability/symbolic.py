"""Rational functions over Q in a few named variables, and one square root.

Thin wrappers over flint's multivariate polynomials; used to carry the
two-parameter family through the derivative formulas with its square root
s (s^2 = d) kept symbolic.
"""

from __future__ import annotations

from fractions import Fraction

import flint

NAMES = ("l1", "l2", "F1", "F2", "F3")
CTX = flint.fmpq_mpoly_ctx.get(NAMES, "lex")


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def gens():
    return [RF(g) for g in CTX.gens()]


class RF:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, flint.fmpq_mpoly):
            num = CTX.constant(_fq(num))
        if den is None:
            den = CTX.constant(1)
        elif not isinstance(den, flint.fmpq_mpoly):
            den = CTX.constant(_fq(den))
        if den.is_zero():
            raise ZeroDivisionError("RF with zero denominator")
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num / lc, den / lc
        self.num, self.den = num, den

    def _w(self, o):
        return o if isinstance(o, RF) else RF(o)

    def __add__(self, o):
        if isinstance(o, QuadRF):
            return NotImplemented
        o = self._w(o)
        if self.den == o.den:
            return RF(self.num + o.num, self.den)
        return RF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RF(-self.num, self.den)

    def __sub__(self, o):
        if isinstance(o, QuadRF):
            return NotImplemented
        return self + (-self._w(o))

    def __rsub__(self, o):
        return self._w(o) - self

    def __mul__(self, o):
        if isinstance(o, QuadRF):
            return NotImplemented
        o = self._w(o)
        return RF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, QuadRF):
            return NotImplemented
        o = self._w(o)
        return RF(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._w(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return RF(1) / self ** (-k)
        return RF(self.num ** k, self.den ** k)

    def __eq__(self, o):
        o = self._w(o)
        return self.num * o.den == o.num * self.den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


class QuadRF:
    """x + y*s with s^2 = d over the RF field."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y, d: RF):
        self.x = x if isinstance(x, RF) else RF(x)
        self.y = y if isinstance(y, RF) else RF(y)
        self.d = d

    def _w(self, o):
        return o if isinstance(o, QuadRF) else QuadRF(o, 0, self.d)

    def __add__(self, o):
        o = self._w(o)
        return QuadRF(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadRF(-self.x, -self.y, self.d)

    def __sub__(self, o):
        return self + (-self._w(o))

    def __rsub__(self, o):
        return self._w(o) - self

    def __mul__(self, o):
        o = self._w(o)
        return QuadRF(self.x * o.x + self.d * self.y * o.y, self.x * o.y + self.y * o.x, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadRF":
        return QuadRF(self.x, -self.y, self.d)

    def norm(self) -> RF:
        return self.x * self.x - self.d * self.y * self.y

    def inverse(self) -> "QuadRF":
        n = self.norm()
        return QuadRF(self.x / n, -self.y / n, self.d)

    def __truediv__(self, o):
        return self * self._w(o).inverse()

    def __pow__(self, k: int):
        r = QuadRF(1, 0, self.d)
        for _ in range(k):
            r = r * self
        return r

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()
