"""Bivariate Taylor polynomials in x, y truncated at total degree 4."""

from __future__ import annotations

from fractions import Fraction

DEGREE = 4


class Taylor2:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {e: c for e, c in (terms or {}).items()
                      if sum(e) <= DEGREE and c != 0}

    @classmethod
    def const(cls, c) -> "Taylor2":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "Taylor2":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> "Taylor2":
        return cls({(0, 1): Fraction(1)})

    def __getitem__(self, jk) -> object:
        return self.terms.get(tuple(jk), Fraction(0))

    def _wrap(self, o):
        return o if isinstance(o, Taylor2) else Taylor2.const(o)

    def __add__(self, o):
        o = self._wrap(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Taylor2(out)

    __radd__ = __add__

    def __neg__(self):
        return Taylor2({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        if not isinstance(o, Taylor2):
            return Taylor2({e: c * o for e, c in self.terms.items()})
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (p, q), d in o.terms.items():
                if a + b + p + q <= DEGREE:
                    e = (a + p, b + q)
                    out[e] = out.get(e, 0) + c * d
        return Taylor2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = Taylor2.const(Fraction(1))
        for _ in range(k):
            r = r * self
        return r

    def constant(self):
        return self[(0, 0)]

    def __eq__(self, o):
        return self.terms == self._wrap(o).terms

    def __repr__(self):
        return f"Taylor2({self.terms!r})"


def binomial_series(u: Taylor2, a: Fraction) -> Taylor2:
    """(1 + u)**a for u without constant term, exact to total degree 4."""
    if u.constant() != 0:
        raise ValueError("binomial series needs u(0, 0) = 0")
    out = Taylor2.const(Fraction(1))
    coef = Fraction(1)
    power = Taylor2.const(Fraction(1))
    for m in range(1, DEGREE + 1):
        coef = coef * (Fraction(a) - m + 1) / m
        power = power * u
        out = out + power * coef
    return out
