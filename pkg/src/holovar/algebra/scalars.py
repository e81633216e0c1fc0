"""Exact scalars: rationals, Gaussian rationals and one quadratic layer on top.

Rationals are plain :class:`fractions.Fraction`.  The two extension types are
small immutable value classes that interoperate with ``int`` and ``Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

Rational = Fraction


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    # flint fmpq / fmpz
    if hasattr(x, "p") and hasattr(x, "q"):
        return Fraction(int(x.p), int(x.q))
    if hasattr(x, "__index__"):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def format_rational(x) -> str:
    """Render ``p/q`` (or ``p`` when q = 1); the sign lives on p."""
    x = to_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(s: str) -> Fraction:
    m = _RAT.match(s)
    if not m:
        raise ValueError(f"not a rational literal: {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def rational_sqrt(x: Fraction):
    """Exact square root of a non-negative rational, or None."""
    x = to_fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def is_zero(x) -> bool:
    return x == 0


class GaussianRational:
    """re + i*im with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(to_fraction(x), 0)

    def __add__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r, b = GaussianRational(1), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return other == self
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}*i"


I = GaussianRational(0, 1)


def gaussian_sqrt(z):
    """Exact square root of a Gaussian rational inside Q(i), or None."""
    z = GaussianRational.coerce(z)
    if z.im == 0:
        r = rational_sqrt(z.re)
        if r is not None:
            return GaussianRational(r)
        r = rational_sqrt(-z.re)
        if r is not None:
            return GaussianRational(0, r)
        return None
    # (a+bi)^2 = z  =>  a^2 = (re + |z|)/2 with |z| = sqrt(re^2+im^2) rational
    mod = rational_sqrt(z.norm())
    if mod is None:
        return None
    a = rational_sqrt((z.re + mod) / 2)
    if a is None or a == 0:
        return None
    b = z.im / (2 * a)
    return GaussianRational(a, b)


def base_sqrt(d):
    if isinstance(d, GaussianRational):
        return gaussian_sqrt(d)
    return rational_sqrt(to_fraction(d))


class QuadExt:
    """x + y*sqrt(d) over a base field (Fraction or GaussianRational).

    ``d`` must be a non-square in the base field; use :func:`adjoin_sqrt`,
    which checks this and falls back to the base field when d is a square.
    """

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y, d):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("QuadExt arithmetic across different towers")
            return other
        return QuadExt(other, 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExt(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        return QuadExt(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExt(self.x * o.x + self.d * self.y * o.y,
                       self.x * o.y + self.y * o.x, self.d)

    __rmul__ = __mul__

    def conj(self):
        """The Galois conjugation sqrt(d) -> -sqrt(d)."""
        return QuadExt(self.x, -self.y, self.d)

    def norm(self):
        return self.x * self.x - self.d * self.y * self.y

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r, b = QuadExt(1, 0, self.d), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                return False
            return self.x == other.x and self.y == other.y
        try:
            return self.y == 0 and self.x == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def in_base(self) -> bool:
        return self.y == 0

    def __repr__(self):
        return f"QuadExt({self.x}, {self.y}, d={self.d})"

    def __str__(self):
        return f"({self.x}) + ({self.y})*sqrt({self.d})"


def sqrt_in_tower(d):
    """Return (root, None) when d is a square in the base, else (QuadExt root, d)."""
    r = base_sqrt(d)
    if r is not None:
        return r, None
    zero = GaussianRational(0) if isinstance(d, GaussianRational) else Fraction(0)
    one = GaussianRational(1) if isinstance(d, GaussianRational) else Fraction(1)
    return QuadExt(zero, one, d), d


def adjoin_sqrt(d):
    """The element sqrt(d): a base element when d is a square, else in Q(..)(sqrt d)."""
    return sqrt_in_tower(d)[0]


def conj_tower(x):
    return x.conj() if isinstance(x, QuadExt) else x


def tower_norm(x):
    return x.norm() if isinstance(x, QuadExt) else x


def real_part_sign(x) -> int:
    """Sign of a real rational scalar (raises for non-real input)."""
    if isinstance(x, QuadExt):
        raise TypeError("sign of a QuadExt element is valuation dependent")
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise TypeError("sign of a non-real Gaussian rational")
        x = x.re
    return (x > 0) - (x < 0)


def scalar_to_json(x):
    if isinstance(x, QuadExt):
        return {"x": scalar_to_json(x.x), "y": scalar_to_json(x.y), "d": scalar_to_json(x.d)}
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return format_rational(x.re)
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    return format_rational(x)


def scalar_from_json(obj):
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        if {"x", "y", "d"} <= obj.keys():
            return QuadExt(scalar_from_json(obj["x"]), scalar_from_json(obj["y"]),
                           scalar_from_json(obj["d"]))
        if {"re", "im"} <= obj.keys():
            return GaussianRational(parse_rational(obj["re"]), parse_rational(obj["im"]))
    raise ValueError(f"unrecognised scalar encoding: {obj!r}")


_GAUSS = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$")


def parse_scalar(s: str):
    """Parse ``p/q``, ``p/q*i``, ``i``, ``a+b*i`` style literals."""
    s = s.strip()
    if "i" not in s:
        return parse_rational(s)
    m = _GAUSS.match(s)
    if not m or (m.group("re") is None and m.group("im") is None and "i" not in s):
        raise ValueError(f"not a Gaussian rational literal: {s!r}")
    re_part = parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    im_part = parse_rational(im_txt) if im_txt else Fraction(1)
    if m.group("sign") == "-":
        im_part = -im_part
    if m.group("re") and m.group("sign") is None and m.group("im") is None:
        # "3i" style: the regex put the digits into "re"
        im_part, re_part = re_part, Fraction(0)
    return GaussianRational(re_part, im_part)
