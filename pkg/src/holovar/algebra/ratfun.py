"""Univariate rational functions over Q, backed by flint polynomials."""

from __future__ import annotations

from fractions import Fraction

import flint

from .unipoly import UniPoly


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _poly(p) -> flint.fmpq_poly:
    if isinstance(p, flint.fmpq_poly):
        return p
    if isinstance(p, flint.fmpz_poly):
        return flint.fmpq_poly(p)
    if isinstance(p, UniPoly):
        return p.to_flint()
    if isinstance(p, (list, tuple)):
        return flint.fmpq_poly([_fq(c) for c in p])
    return flint.fmpq_poly([_fq(p)])


class RatFun:
    """num/den with gcd removed and a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = _poly(num)
        den = flint.fmpq_poly([1]) if den is None else _poly(den)
        if den == 0:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num == 0:
                den = flint.fmpq_poly([1])
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num // g, den // g
            lc = den[den.degree()]
            if lc != 1:
                num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def n(cls) -> "RatFun":
        return cls(flint.fmpq_poly([0, 1]))

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(flint.fmpq_poly([_fq(c)]))

    @classmethod
    def power(cls, k: int) -> "RatFun":
        """n**k for any integer k."""
        if k >= 0:
            return cls(flint.fmpq_poly([0] * k + [1]))
        return cls(flint.fmpq_poly([1]), flint.fmpq_poly([0] * (-k) + [1]))

    def _wrap(self, o):
        return o if isinstance(o, RatFun) else RatFun.const(o)

    def __add__(self, o):
        o = self._wrap(o)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        if not isinstance(o, RatFun):
            c = _fq(o)
            return RatFun(self.num * c, self.den, reduce=(c == 0))
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._wrap(o)
        if o.num == 0:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._wrap(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFun(self.den ** (-k), self.num ** (-k))
        return RatFun(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, o):
        o = self._wrap(o)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num == 0

    def __call__(self, x):
        x = _fq(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        v = self.num(x) / d
        return Fraction(int(v.p), int(v.q))

    def shift(self, a) -> "RatFun":
        """f(n + a)."""
        s = flint.fmpq_poly([_fq(a), 1])
        return RatFun(self.num(s), self.den(s))

    def valuation_at_infinity(self) -> int:
        """deg den - deg num (order of decay at infinity)."""
        if self.num == 0:
            return 10 ** 9
        return self.den.degree() - self.num.degree()

    def leading_at_infinity(self) -> Fraction:
        """Coefficient c with f ~ c * n**(-valuation)."""
        a = self.num[self.num.degree()]
        b = self.den[self.den.degree()]
        q = a / b
        return Fraction(int(q.p), int(q.q))

    def expansion_at_infinity(self, terms: int):
        """First ``terms`` coefficients of f in powers of 1/n, starting at the
        valuation: returns (v, [c_v, c_{v+1}, ...]) with f = sum c_k n^-k."""
        v = self.valuation_at_infinity()
        if self.num == 0:
            return v, [Fraction(0)] * terms
        dn, dd = self.num.degree(), self.den.degree()
        # in u = 1/n: f = u^v * revnum(u)/revden(u)
        rn = flint.fmpq_poly([self.num[dn - i] for i in range(dn + 1)])
        rd = flint.fmpq_poly([self.den[dd - i] for i in range(dd + 1)])
        inv = rd.inv_series(terms) if hasattr(rd, "inv_series") else None
        if inv is None:
            # Newton-free fallback: long division of series
            coeffs = []
            rem = [rn[i] if i <= dn else 0 for i in range(terms)]
            c0 = rd[0]
            for k in range(terms):
                c = rem[k] / c0
                coeffs.append(c)
                for j in range(1, dd + 1):
                    if k + j < terms:
                        rem[k + j] -= c * rd[j]
            return v, [Fraction(int(c.p), int(c.q)) for c in coeffs]
        prod = rn.mul_low(inv, terms) if hasattr(rn, "mul_low") else (rn * inv)
        return v, [Fraction(int(prod[i].p), int(prod[i].q)) for i in range(terms)]

    def to_unipolys(self):
        return UniPoly.from_flint(self.num, "n"), UniPoly.from_flint(self.den, "n")

    def __repr__(self):
        return f"RatFun(({self.num}) / ({self.den}))"
