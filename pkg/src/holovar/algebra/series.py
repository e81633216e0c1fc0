"""Truncated Laurent series at t = infinity with coefficients in Q[alpha]/(alpha^4).

A :class:`SeriesInf` stores, for each power of the marker alpha, a flint
polynomial in u = 1/t: slice index k holds the coefficient of t^(top - k).
Coefficients of exponents below ``-T`` are unknown; asking for one raises
:class:`SeriesPrecisionError`.  ``T = None`` marks an exact object (a
polynomial or a finite Laurent sum) whose missing coefficients are zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence

import flint

from .unipoly import UniPoly

ALPHA_DEG = 4  # slices alpha^0 .. alpha^3


class SeriesPrecisionError(ValueError):
    """A coefficient below the known truncation range was requested."""


class LogarithmicObstruction(ArithmeticError):
    """Termwise integration met a nonzero t^-1 coefficient."""

    def __init__(self, coefficient: "AlphaPoly"):
        super().__init__(f"logarithmic obstruction: t^-1 coefficient {coefficient}")
        self.coefficient = coefficient


def _fq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _fr(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class AlphaPoly:
    """c0 + c1*alpha + c2*alpha^2 + c3*alpha^3; products drop alpha^4 and up."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs][:ALPHA_DEG]
        c += [Fraction(0)] * (ALPHA_DEG - len(c))
        self.c = tuple(c)

    def __getitem__(self, j: int) -> Fraction:
        return self.c[j]

    def __add__(self, o):
        o = o if isinstance(o, AlphaPoly) else AlphaPoly([o])
        return AlphaPoly(a + b for a, b in zip(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return AlphaPoly(-a for a in self.c)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, AlphaPoly) else AlphaPoly([o])))

    def __mul__(self, o):
        if not isinstance(o, AlphaPoly):
            return AlphaPoly(a * o for a in self.c)
        out = [Fraction(0)] * ALPHA_DEG
        for i, a in enumerate(self.c):
            if a:
                for j in range(ALPHA_DEG - i):
                    out[i + j] += a * o.c[j]
        return AlphaPoly(out)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, AlphaPoly):
            o = AlphaPoly([o])
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __repr__(self):
        return "AlphaPoly(" + ", ".join(str(x) for x in self.c) + ")"


def _empty():
    return flint.fmpq_poly([])


class SeriesInf:
    __slots__ = ("top", "slices", "T")

    def __init__(self, top: int, slices: Sequence, T: Optional[int]):
        s = [flint.fmpq_poly(x) if not isinstance(x, flint.fmpq_poly) else x for x in slices]
        s += [_empty() for _ in range(ALPHA_DEG - len(s))]
        if T is not None:
            L = top + T + 1
            if L <= 0:
                s = [_empty() for _ in range(ALPHA_DEG)]
            else:
                s = [x.truncate(L) if x.length() > L else x for x in s]
        self.top, self.slices, self.T = top, tuple(s), T
        self._strip()

    # construction ----------------------------------------------------------
    @classmethod
    def zero(cls, T: Optional[int] = None) -> "SeriesInf":
        return cls(0, [], T)

    @classmethod
    def from_poly(cls, p, alpha_power: int = 0) -> "SeriesInf":
        """Exact series of a polynomial in t (UniPoly, flint poly or list)."""
        if isinstance(p, UniPoly):
            p = p.to_flint()
        elif not isinstance(p, flint.fmpq_poly):
            p = flint.fmpq_poly([_fq(c) for c in p])
        d = p.degree()
        if d < 0:
            return cls.zero()
        rev = flint.fmpq_poly([p[d - i] for i in range(d + 1)])
        sl = [_empty()] * ALPHA_DEG
        sl[alpha_power] = rev
        return cls(d, sl, None)

    @classmethod
    def from_terms(cls, terms: Dict[int, object], T: Optional[int]) -> "SeriesInf":
        """Series from {exponent: Rational or AlphaPoly}."""
        if not terms:
            return cls.zero(T)
        top = max(terms)
        bottom = min(terms)
        length = top - bottom + 1
        cols = [[flint.fmpq(0)] * length for _ in range(ALPHA_DEG)]
        for e, v in terms.items():
            a = v if isinstance(v, AlphaPoly) else AlphaPoly([v])
            for j in range(ALPHA_DEG):
                cols[j][top - e] = _fq(a[j])
        return cls(top, [flint.fmpq_poly(c) for c in cols], T)

    @classmethod
    def alpha(cls) -> "SeriesInf":
        return cls(0, [_empty(), flint.fmpq_poly([1])], None)

    @classmethod
    def from_u_series(cls, top: int, u_coeffs: flint.fmpq_poly, T: Optional[int]) -> "SeriesInf":
        """Wrap an alpha-free u-series whose index 0 is exponent ``top``."""
        return cls(top, [u_coeffs], T)

    # queries ---------------------------------------------------------------
    def _strip(self):
        s = list(self.slices)
        if all(x.is_zero() for x in s):
            if self.T is None:
                self.top = 0
            return
        shift = min((_low_zero_count(x) for x in s if not x.is_zero()))
        if shift:
            s = [x.right_shift(shift) if not x.is_zero() else x for x in s]
            self.top -= shift
            self.slices = tuple(s)

    def is_exact(self) -> bool:
        return self.T is None

    def known_length(self) -> Optional[int]:
        return None if self.T is None else max(0, self.top + self.T + 1)

    def coefficient(self, e: int) -> AlphaPoly:
        if self.T is not None and e < -self.T:
            raise SeriesPrecisionError(f"t^{e} lies below the known range (T={self.T})")
        k = self.top - e
        if k < 0:
            return AlphaPoly()
        return AlphaPoly(_fr(x[k]) if k < x.length() else 0 for x in self.slices)

    def __getitem__(self, e: int) -> AlphaPoly:
        return self.coefficient(e)

    def residue(self) -> AlphaPoly:
        """Coefficient of t^-1 (no sign flip)."""
        return self.coefficient(-1)

    def leading_exponent(self) -> Optional[int]:
        """Exponent of the first nonzero coefficient, None if all known are 0."""
        if all(x.is_zero() for x in self.slices):
            return None
        return self.top

    def exponents(self):
        """Known exponents, descending."""
        L = self.known_length()
        if L is None:
            L = max((x.length() for x in self.slices), default=0)
        return range(self.top, self.top - L, -1)

    def alpha_part(self, j: int) -> "SeriesInf":
        sl = [_empty()] * ALPHA_DEG
        sl[0] = self.slices[j]
        return SeriesInf(self.top, sl, self.T)

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _min_T(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, o):
        if not isinstance(o, SeriesInf):
            o = SeriesInf.from_terms({0: o}, None)
        top = max(self.top, o.top)
        T = self._min_T(self.T, o.T)
        sl = []
        for x, y in zip(self.slices, o.slices):
            sl.append(x.left_shift(top - self.top) + y.left_shift(top - o.top))
        return SeriesInf(top, sl, T)

    __radd__ = __add__

    def __neg__(self):
        return SeriesInf(self.top, [-x for x in self.slices], self.T)

    def __sub__(self, o):
        return self + (-o if isinstance(o, SeriesInf) else -Fraction(o))

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c) -> "SeriesInf":
        c = _fq(c)
        return SeriesInf(self.top, [x * c for x in self.slices], self.T)

    def __mul__(self, o):
        if not isinstance(o, SeriesInf):
            return self.scale(o)
        top = self.top + o.top
        if self.T is None and o.T is None:
            T, L = None, None
        else:
            Ts = []
            if self.T is not None:
                Ts.append(self.T - o.top)
            if o.T is not None:
                Ts.append(o.T - self.top)
            T = min(Ts)
            L = top + T + 1
            if L <= 0:
                return SeriesInf(top, [], T)
        out = [_empty() for _ in range(ALPHA_DEG)]
        for i, x in enumerate(self.slices):
            if x.is_zero():
                continue
            for j in range(ALPHA_DEG - i):
                y = o.slices[j]
                if y.is_zero():
                    continue
                out[i + j] += x * y if L is None else x.mul_low(y, L)
        return SeriesInf(top, out, T)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a series")
        r = SeriesInf.from_terms({0: 1}, None)
        for _ in range(k):
            r = r * self
        return r

    def mul_t_power(self, k: int) -> "SeriesInf":
        """Multiply by t^k."""
        return SeriesInf(self.top + k, self.slices, None if self.T is None else self.T - k)

    def truncate(self, T: int) -> "SeriesInf":
        if self.T is not None and T > self.T:
            raise SeriesPrecisionError("cannot raise the truncation order")
        return SeriesInf(self.top, self.slices, T)

    def derivative(self) -> "SeriesInf":
        """Formal d/dt, termwise."""
        L = max((x.length() for x in self.slices), default=0)
        exps = [self.top - k for k in range(L)]
        sl = []
        for x in self.slices:
            sl.append(flint.fmpq_poly([x[k] * exps[k] for k in range(x.length())]))
        T = None if self.T is None else self.T + 1
        return SeriesInf(self.top - 1, sl, T)

    def agrees_with(self, o: "SeriesInf") -> bool:
        """Equality of all coefficients known to both operands."""
        lo = -min(x for x in (self.T, o.T, 10 ** 9) if x is not None)
        if self.T is None and o.T is None:
            lo = min(self.top - max((x.length() for x in self.slices), default=0),
                     o.top - max((x.length() for x in o.slices), default=0))
        for e in range(max(self.top, o.top), lo - 1, -1):
            if self.coefficient(e) != o.coefficient(e):
                return False
        return True

    def to_json(self) -> dict:
        """{exponent: [c0, c1, c2, c3]} with exact rational strings."""
        from .scalars import format_rational
        out = {}
        for e in self.exponents():
            a = self.coefficient(e)
            if not a.is_zero():
                out[str(e)] = [format_rational(x) for x in a.c]
        return {"T": self.T, "terms": out}

    def __repr__(self):
        return f"SeriesInf(top={self.top}, T={self.T}, len={[x.length() for x in self.slices]})"


def _low_zero_count(p: flint.fmpq_poly) -> int:
    k = 0
    while p[k] == 0:
        k += 1
    return k


def series_arctanh_inv_t(T: int) -> SeriesInf:
    """arctanh(1/t) = sum t^-(2k+1)/(2k+1), known to order T."""
    if T < 1:
        raise ValueError("truncation order must be >= 1")
    coeffs = [flint.fmpq(0)] * (T + 1)
    for m in range(1, T + 1, 2):
        coeffs[m] = flint.fmpq(1, m)
    return SeriesInf(0, [flint.fmpq_poly(coeffs)], T)


def series_integrate(s: SeriesInf) -> SeriesInf:
    """Termwise antiderivative with zero constant; requires a zero t^-1 term."""
    r = s.coefficient(-1) if s.top >= -1 else AlphaPoly()
    if not r.is_zero():
        raise LogarithmicObstruction(r)
    sl = []
    for x in s.slices:
        cs = []
        for k in range(x.length()):
            e = s.top - k
            cs.append(flint.fmpq(0) if e == -1 else x[k] / (e + 1))
        sl.append(flint.fmpq_poly(cs))
    T = None if s.T is None else s.T - 1
    return SeriesInf(s.top + 1, sl, T)


def residue_of_product(x: SeriesInf, y: SeriesInf) -> AlphaPoly:
    """Coefficient of t^-1 in x*y without forming the full product."""
    need_x = -1 - y.top  # lowest exponent of x that can contribute
    need_y = -1 - x.top
    if x.T is not None and need_x < -x.T:
        raise SeriesPrecisionError("left factor not known far enough for the residue")
    if y.T is not None and need_y < -y.T:
        raise SeriesPrecisionError("right factor not known far enough for the residue")
    out = [flint.fmpq(0)] * ALPHA_DEG
    for i, xs in enumerate(x.slices):
        if xs.is_zero():
            continue
        for j in range(ALPHA_DEG - i):
            ys = y.slices[j]
            if ys.is_zero():
                continue
            acc = flint.fmpq(0)
            # x index k <-> exponent x.top - k; partner exponent -1 - (x.top - k)
            for k in range(xs.length()):
                c = xs[k]
                if c == 0:
                    continue
                kk = y.top + 1 + x.top - k
                if 0 <= kk < ys.length():
                    acc += c * ys[kk]
            out[i + j] += acc
    return AlphaPoly(_fr(v) for v in out)
