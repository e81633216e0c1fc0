"""Dense univariate polynomials over a generic exact ring.

Coefficients are stored lowest degree first.  The ring only needs ``+ - *``,
equality with 0 and, for division-based operations, ``/``.  Coefficients may
themselves be :class:`UniPoly` instances, which is how bivariate objects are
represented.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

import flint


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        self.coeffs = _strip(list(coeffs))
        self.var = var

    # construction ----------------------------------------------------------
    @classmethod
    def x(cls, var: str = "x", one=1, zero=0) -> "UniPoly":
        return cls([zero, one], var)

    @classmethod
    def const(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    @classmethod
    def from_flint(cls, p, var: str = "x") -> "UniPoly":
        out = []
        for c in p.coeffs():
            if isinstance(c, flint.fmpq):
                out.append(Fraction(int(c.p), int(c.q)))
            else:
                out.append(Fraction(int(c)))
        return cls(out, var)

    def to_flint(self) -> flint.fmpq_poly:
        return flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
                                for c in self.coeffs])

    # basic queries ---------------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # arithmetic ------------------------------------------------------------
    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._wrap(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if other == 0:
                return UniPoly([], self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = UniPoly([1], self.var)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, c) -> "UniPoly":
        return UniPoly([x * c for x in self.coeffs], self.var)

    def __truediv__(self, c):
        if isinstance(c, UniPoly):
            q, r = self.divmod(c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        return UniPoly([x / c for x in self.coeffs], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, f: Callable) -> "UniPoly":
        return UniPoly([f(c) for c in self.coeffs], self.var)

    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, q: "UniPoly") -> "UniPoly":
        acc = UniPoly([], q.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def shift(self, a) -> "UniPoly":
        """p(x + a)."""
        return self.compose(UniPoly([a, 1], self.var))

    def reverse(self, n: int | None = None) -> "UniPoly":
        n = self.degree() if n is None else n
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return UniPoly(c[: n + 1][::-1], self.var)

    # division over a field -------------------------------------------------
    def divmod(self, d: "UniPoly"):
        if not d.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.degree()
        lcd = d.coeffs[-1]
        q = [0] * max(0, len(r) - dd)
        for k in range(len(r) - 1 - dd, -1, -1):
            c = r[k + dd]
            if c == 0:
                continue
            c = c / lcd
            q[k] = c
            for j, y in enumerate(d.coeffs):
                r[k + j] = r[k + j] - c * y
        return UniPoly(q, self.var), UniPoly(r[:dd] if dd > 0 else [], self.var)

    def __mod__(self, d):
        return self.divmod(d)[1]

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def exquo(self, d: "UniPoly") -> "UniPoly":
        """Exact division that works over integral domains (Fractions or UniPolys)."""
        if not d.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.degree()
        lcd = d.coeffs[-1]
        q = [0] * max(0, len(r) - dd)
        for k in range(len(r) - 1 - dd, -1, -1):
            c = r[k + dd]
            if c == 0:
                continue
            c = _exact_div(c, lcd)
            q[k] = c
            for j, y in enumerate(d.coeffs):
                r[k + j] = r[k + j] - c * y
        if any(x != 0 for x in r):
            raise ArithmeticError("polynomial is not exactly divisible")
        return UniPoly(q, self.var)

    def monic(self) -> "UniPoly":
        return self / self.lc()

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def content_primitive(self):
        """For rational coefficients: (content, primitive integer polynomial)."""
        from math import gcd, lcm
        if not self.coeffs:
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = lcm(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly([Fraction(v // g) for v in ints], self.var)

    def __repr__(self):
        return f"UniPoly({self.coeffs!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if isinstance(c, UniPoly):
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)


def _exact_div(a, b):
    if isinstance(b, UniPoly):
        if not isinstance(a, UniPoly):
            a = UniPoly([a], b.var)
        return a.exquo(b)
    if isinstance(a, UniPoly):
        return a / b
    if hasattr(a, "exquo"):
        return a.exquo(b)
    return a / b


def poly_from_roots_int(roots: Sequence[int]) -> UniPoly:
    return UniPoly.from_roots([Fraction(r) for r in roots])


def rational_poly(coeffs: Sequence, var: str = "x") -> UniPoly:
    return UniPoly([Fraction(c) for c in coeffs], var)


def ratfun_eval(num: UniPoly, den: UniPoly, x):
    return Fraction(num(x)) / Fraction(den(x))
