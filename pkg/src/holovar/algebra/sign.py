"""Certified constant-sign statements for rational functions on [n0, +inf).

Two entry points:

* :func:`sign_certify_univariate` for a rational function of ``n``;
* :func:`sign_certify_region` for a polynomial ``G(n, h)`` on the region
  ``n >= n0, h_low(n) <= h <= h_high(n)``.

Both return a :class:`SignVerdict`.  A verdict with ``sign is None`` means
"fails"; it is never a claim that the sign changes, only that this route did
not prove constancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import flint

from .ratfun import RatFun, _fq
from .roots import (
    as_flint,
    count_roots,
    count_roots_above,
    descartes_no_root_at_or_above,
    isolate_real_roots,
    refine_root,
    squarefree_part,
)
from .unipoly import UniPoly


@dataclass(frozen=True)
class SignVerdict:
    sign: Optional[int]  # +1, -1, or None when certification failed
    witness: Optional[Tuple[Fraction, Fraction]] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.sign is not None

    def __str__(self):
        if self.sign is None:
            return f"fails ({self.reason})"
        return "+" if self.sign > 0 else "-"


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _as_ratfun(f) -> RatFun:
    if isinstance(f, RatFun):
        return f
    if isinstance(f, tuple) and len(f) == 2:
        return RatFun(f[0], f[1])
    return RatFun(f)


def _first_root_at_or_above(p: flint.fmpq_poly, n0: Fraction):
    """Isolating interval of some real root >= n0, or None."""
    for a, b in isolate_real_roots(p):
        if b >= n0:
            a, b = refine_root(p, (a, b), Fraction(1))
            return (max(a, n0) if a != b else a, b)
    return None


def poly_root_free_from(p, n0) -> Tuple[bool, Optional[Tuple[Fraction, Fraction]]]:
    """True when the polynomial has no real root in [n0, +inf)."""
    p = as_flint(p)
    n0 = Fraction(n0)
    if p == 0:
        return False, (n0, n0)
    if p.degree() == 0:
        return True, None
    if descartes_no_root_at_or_above(p, n0):
        return True, None
    f = squarefree_part(p)
    if f(_fq(n0)) == 0:
        return False, (n0, n0)
    if count_roots_above(f, n0, strict=True) == 0:
        return True, None
    return False, _first_root_at_or_above(f, n0)


def sign_certify_univariate(f, n0) -> SignVerdict:
    """Certified sign of a rational function f(n) for all real n >= n0."""
    r = _as_ratfun(f)
    n0 = Fraction(n0)
    if r.is_zero():
        return SignVerdict(None, (n0, n0), "identically zero")
    ok, w = poly_root_free_from(r.den, n0)
    if not ok:
        return SignVerdict(None, w, "denominator vanishes at or beyond n0")
    ok, w = poly_root_free_from(r.num, n0)
    if not ok:
        return SignVerdict(None, w, "numerator vanishes at or beyond n0")
    x = _fq(n0)
    return SignVerdict(_sgn(r.num(x)) * _sgn(r.den(x)))


def certify_nonnegative(f, n0) -> bool:
    """f(n) >= 0 for all n >= n0 (a zero exactly at n0 is allowed)."""
    r = _as_ratfun(f)
    n0 = Fraction(n0)
    if r.is_zero():
        return True
    num = r.num
    lin = flint.fmpq_poly([-_fq(n0), 1])
    while num(_fq(n0)) == 0:
        num = num // lin  # (n - n0)^k > 0 beyond n0
    v = sign_certify_univariate(RatFun(num, r.den, reduce=False), n0)
    return v.ok and v.sign > 0


def _coeff_ratfuns(G) -> list:
    if isinstance(G, UniPoly):
        return [_as_ratfun(c) if not isinstance(c, (int, Fraction)) else RatFun.const(c)
                for c in G.coeffs]
    return [_as_ratfun(c) if not isinstance(c, (int, Fraction)) else RatFun.const(c) for c in G]


def _clear(G: Sequence[RatFun], n0) -> Tuple[Optional[list], int, str]:
    """Multiply the h-coefficients by a common denominator D(n) whose sign on
    [n0, inf) is certified.  Returns (flint polys, sign(D), reason)."""
    D = flint.fmpq_poly([1])
    for c in G:
        g = D.gcd(c.den)
        D = D * (c.den // g) if g.degree() > 0 else D * c.den
    v = sign_certify_univariate(RatFun(D), n0)
    if not v.ok:
        return None, 0, "common denominator of G not sign-definite"
    out = [c.num * (D // c.den) for c in G]
    return out, v.sign, ""


def _substitute(Gp: list, p: flint.fmpq_poly, q: flint.fmpq_poly) -> flint.fmpq_poly:
    """sum_j G_j p^j q^(d-j) with d = len(Gp) - 1."""
    d = len(Gp) - 1
    acc = flint.fmpq_poly([0])
    for j, g in enumerate(Gp):
        if g == 0:
            continue
        acc += g * p ** j * q ** (d - j)
    return acc


def _bivariate_disc(Gp: list) -> flint.fmpq_poly:
    """Res_h(G, dG/dh) as a polynomial in n; only its zero set is used."""
    ctx = flint.fmpq_mpoly_ctx.get(("h", "n"), "lex")
    terms = {}
    for j, g in enumerate(Gp):
        for i in range(g.degree() + 1):
            c = g[i]
            if c != 0:
                terms[(j, i)] = c
    G = ctx.from_dict(terms)
    dG = G.derivative("h")
    R = G.resultant(dG, "h")
    out = {}
    for e, c in R.to_dict().items():
        out[int(e[1])] = c
    top = max(out, default=-1)
    return flint.fmpq_poly([out.get(i, 0) for i in range(top + 1)])


def sign_certify_region(G, n0, h_low, h_high) -> SignVerdict:
    """Certified sign of G(n, h) on {n >= n0, h_low(n) <= h <= h_high(n)}.

    ``G`` is a UniPoly in h (or a list of h-coefficients) whose coefficients
    are rational functions / polynomials in n.
    """
    n0 = Fraction(n0)
    lo, hi = _as_ratfun(h_low), _as_ratfun(h_high)
    if not certify_nonnegative(hi - lo, n0):
        return SignVerdict(None, None, "h_low <= h_high not certified")
    coeffs = _coeff_ratfuns(G)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        return SignVerdict(None, (n0, n0), "G is identically zero")
    Gp, sD, why = _clear(coeffs, n0)
    if Gp is None:
        return SignVerdict(None, None, why)
    d = len(Gp) - 1
    if d == 0:
        v = sign_certify_univariate(RatFun(Gp[0]), n0)
        return SignVerdict(v.sign * sD, None) if v.ok else v
    signs = []
    for end in (lo, hi):
        p, q = end.num, end.den
        v = sign_certify_univariate(RatFun(_substitute(Gp, p, q)), n0)
        if not v.ok:
            return SignVerdict(None, v.witness, "G vanishes on a boundary curve: " + v.reason)
        s = v.sign
        if d % 2 == 1:
            sq = sign_certify_univariate(RatFun(q), n0)
            if not sq.ok:
                return SignVerdict(None, sq.witness, "boundary denominator not sign-definite")
            s *= sq.sign
        signs.append(s)
    if signs[0] != signs[1]:
        return SignVerdict(None, None, "G takes both signs on the boundary")
    if d >= 2:
        disc = _bivariate_disc(Gp)
        if disc == 0:
            return SignVerdict(None, None, "G has a repeated h-factor")
        ok, w = poly_root_free_from(disc, n0)
        if not ok:
            return SignVerdict(None, w, "h-discriminant vanishes beyond n0")
        # no root of G(n0, .) inside the h-interval at n0
        x = _fq(n0)
        g0 = flint.fmpq_poly([0])
        for j, g in enumerate(Gp):
            g0 += flint.fmpq_poly([0] * j + [g(x)])
        a, b = Fraction(lo(n0)), Fraction(hi(n0))
        if g0 == 0 or count_roots(g0, a, b) != 0:
            return SignVerdict(None, (n0, n0), "G(n0, h) has a root inside the h-interval")
    return SignVerdict(signs[0] * sD)
