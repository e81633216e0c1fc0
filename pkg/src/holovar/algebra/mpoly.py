"""Sparse multivariate polynomials over a generic exact coefficient ring.

A polynomial is a dict mapping exponent tuples to non-zero coefficients.
Only what the symbolic derivations need is implemented: ring arithmetic,
substitution, exact division, conversion to/from :class:`UniPoly` in one
variable, and reduction modulo a relation ``s**2 = D``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

from .unipoly import UniPoly


class MPoly:
    __slots__ = ("terms", "names")

    def __init__(self, terms: dict | None, names: Sequence[str]):
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    # construction ----------------------------------------------------------
    @classmethod
    def gens(cls, names: Sequence[str], one=Fraction(1)):
        n = len(names)
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls({tuple(e): one}, names))
        return out

    @classmethod
    def const(cls, c, names: Sequence[str]):
        return cls({(0,) * len(names): c}, names)

    def zero(self):
        return MPoly({}, self.names)

    def nvars(self) -> int:
        return len(self.names)

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(0,) * len(self.names): other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.names), 0)

    # arithmetic ------------------------------------------------------------
    def _wrap(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other, self.names)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if other == 0:
                return self.zero()
            return MPoly({e: c * other for e, c in self.terms.items()}, self.names)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return MPoly(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = MPoly.const(1, self.names)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            return self.exquo(c)
        return MPoly({e: v / c for e, v in self.terms.items()}, self.names)

    def map_coeffs(self, f):
        return MPoly({e: f(c) for e, c in self.terms.items()}, self.names)

    # monomial order helpers (lex) -----------------------------------------------
    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exquo(self, d: "MPoly") -> "MPoly":
        """Exact division; raises ArithmeticError when d does not divide self."""
        if not isinstance(d, MPoly):
            return self / d
        if d.is_zero():
            raise ZeroDivisionError("MPoly division by zero")
        ed, cd = d.leading()
        r = MPoly(dict(self.terms), self.names)
        q: dict = {}
        while r.terms:
            er, cr = r.leading()
            diff = tuple(a - b for a, b in zip(er, ed))
            if min(diff) < 0:
                raise ArithmeticError("MPoly is not exactly divisible")
            c = cr / cd
            q[diff] = q.get(diff, 0) + c
            r = r - MPoly({diff: c}, self.names) * d
        return MPoly(q, self.names)

    def derivative(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly(out, self.names)

    def subs(self, i: int, value) -> "MPoly":
        """Substitute variable i by a scalar or an MPoly in the same ring."""
        v = value if isinstance(value, MPoly) else MPoly.const(value, self.names)
        by_power: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            by_power.setdefault(k, {})[tuple(ne)] = c
        out = self.zero()
        powers = {0: MPoly.const(1, self.names)}
        for k in sorted(by_power):
            if k not in powers:
                powers[k] = v ** k
            out = out + MPoly(by_power[k], self.names) * powers[k]
        return out

    def evaluate(self, values: Sequence):
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            acc = acc + t
        return acc

    def reduce_square(self, i: int, D: "MPoly") -> "MPoly":
        """Rewrite s**2 -> D for the variable s = x_i until deg_s <= 1."""
        out = self.zero()
        Dp = {0: MPoly.const(1, self.names)}
        for e, c in self.terms.items():
            k = e[i]
            ne = list(e)
            ne[i] = k % 2
            if k // 2 not in Dp:
                Dp[k // 2] = D ** (k // 2)
            out = out + MPoly({tuple(ne): c}, self.names) * Dp[k // 2]
        return out

    def split_linear(self, i: int):
        """For deg_i <= 1 return (p0, p1) with self = p0 + x_i * p1."""
        p0, p1 = {}, {}
        for e, c in self.terms.items():
            if e[i] == 0:
                p0[e] = c
            elif e[i] == 1:
                ne = list(e)
                ne[i] = 0
                p1[tuple(ne)] = c
            else:
                raise ValueError("split_linear needs degree <= 1 in the variable")
        return MPoly(p0, self.names), MPoly(p1, self.names)

    def as_unipoly(self, i: int) -> UniPoly:
        """View as a polynomial in x_i with MPoly coefficients (x_i removed)."""
        buckets: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        top = max(buckets, default=-1)
        coeffs = [MPoly(buckets.get(k, {}), self.names) for k in range(top + 1)]
        return UniPoly(coeffs, self.names[i])

    @classmethod
    def from_unipoly(cls, p: UniPoly, i: int, names: Sequence[str]) -> "MPoly":
        out = MPoly({}, names)
        x = cls.gens(names)[i]
        for k, c in enumerate(p.coeffs):
            cm = c if isinstance(c, MPoly) else MPoly.const(c, names)
            out = out + cm * x ** k
        return out

    def to_univariate(self, i: int) -> UniPoly:
        """When only x_i occurs, return an ordinary UniPoly in it."""
        coeffs: dict = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial depends on other variables")
            coeffs[e[i]] = c
        top = max(coeffs, default=-1)
        return UniPoly([coeffs.get(k, 0) for k in range(top + 1)], self.names[i])

    # flint bridge (rational coefficients only) ----------------------------------
    def to_flint(self, ctx=None):
        if ctx is None:
            ctx = flint.fmpq_mpoly_ctx.get(self.names, "lex")
        d = {e: flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
             for e, c in self.terms.items()}
        return ctx.from_dict(d) if d else ctx.from_dict({(0,) * len(self.names): 0})

    @classmethod
    def from_flint(cls, p, names: Sequence[str]) -> "MPoly":
        out = {}
        for e, c in p.to_dict().items():
            out[tuple(int(k) for k in e)] = Fraction(int(c.p), int(c.q))
        return cls(out, names)

    def __repr__(self):
        return f"MPoly({len(self.terms)} terms in {self.names})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.names, e) if k)
            cs = str(c)
            parts.append(cs if not mono else f"({cs})*{mono}")
        return " + ".join(parts)


def mpoly_gcd(a: MPoly, b: MPoly) -> MPoly:
    ctx = flint.fmpq_mpoly_ctx.get(a.names, "lex")
    return MPoly.from_flint(a.to_flint(ctx).gcd(b.to_flint(ctx)), a.names)


def mpoly_factor(a: MPoly):
    """(constant, [(factor, multiplicity), ...]) over Q."""
    ctx = flint.fmpq_mpoly_ctx.get(a.names, "lex")
    c, facs = a.to_flint(ctx).factor()
    return Fraction(int(c.p), int(c.q)), [(MPoly.from_flint(f, a.names), int(m)) for f, m in facs]
