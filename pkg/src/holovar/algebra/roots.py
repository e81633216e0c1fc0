"""Real root isolation over Q with Sturm sequences.

Polynomial arithmetic is delegated to flint's ``fmpq_poly``; the isolation
logic (square-free reduction, Sturm chains, bisection, refinement) is here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import flint

from .unipoly import UniPoly

Interval = Tuple[Fraction, Fraction]


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _fr(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def as_flint(p) -> flint.fmpq_poly:
    if isinstance(p, flint.fmpq_poly):
        return p
    if isinstance(p, flint.fmpz_poly):
        return flint.fmpq_poly(p)
    if isinstance(p, UniPoly):
        return p.to_flint()
    return flint.fmpq_poly([_fq(c) for c in p])


def squarefree_part(p: flint.fmpq_poly) -> flint.fmpq_poly:
    g = p.gcd(p.derivative())
    if g.degree() <= 0:
        return p
    return p // g


def sturm_chain(p: flint.fmpq_poly) -> list:
    chain = [p, p.derivative()]
    while chain[-1].degree() > 0:
        r = -(chain[-2] % chain[-1])
        if r == 0:
            break
        chain.append(r)
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def sign_changes_at(chain: list, x: Fraction) -> int:
    fx = _fq(x)
    return _variations([_sign(q(fx)) for q in chain])


def sign_changes_at_infinity(chain: list, positive: bool = True) -> int:
    signs = []
    for q in chain:
        lc = q[q.degree()]
        s = _sign(lc)
        if not positive and q.degree() % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def cauchy_bound(p: flint.fmpq_poly) -> Fraction:
    """A power of two strictly above every |root| of p."""
    n = p.degree()
    lc = abs(_fr(p[n]))
    m = max((abs(_fr(p[i])) for i in range(n)), default=Fraction(0))
    b = 1 + m / lc
    k = Fraction(1)
    while k <= b:
        k *= 2
    return k


def count_roots(p, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    f = squarefree_part(as_flint(p))
    if f.degree() <= 0:
        return 0
    ch = sturm_chain(f)
    return sign_changes_at(ch, a) - sign_changes_at(ch, b)


def count_roots_above(p, a: Fraction, strict: bool = True) -> int:
    """Distinct real roots in (a, +inf) (or [a, +inf) when strict is False)."""
    f = squarefree_part(as_flint(p))
    if f.degree() <= 0:
        return 0
    ch = sturm_chain(f)
    extra = 0
    if not strict and f(_fq(a)) == 0:
        extra = 1
    return sign_changes_at(ch, a) - sign_changes_at_infinity(ch, True) + extra


def isolate_real_roots(p, width: Fraction | None = None) -> List[Interval]:
    """Disjoint intervals (a, b), each with exactly one distinct real root.

    An exact rational root r is reported as the degenerate interval (r, r).
    When ``width`` is given, intervals are refined below it.
    """
    f = squarefree_part(as_flint(p))
    if f.degree() <= 0:
        return []
    ch = sturm_chain(f)
    B = cauchy_bound(f)
    out: List[Interval] = []
    stack = [(-B, B, sign_changes_at(ch, -B), sign_changes_at(ch, B))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if f(_fq(m)) == 0:
            out.append((m, m))
            vm_left = sign_changes_at(ch, m)
            # roots strictly left of m: va - vm_left; strictly right: vm_left - 1 - vb
            eps = (b - a) / 8
            while True:
                lo, hi = m - eps, m + eps
                if count_roots(f, lo, hi) == 1 and f(_fq(lo)) != 0 and f(_fq(hi)) != 0:
                    break
                eps /= 2
            stack.append((a, lo, va, sign_changes_at(ch, lo)))
            stack.append((hi, b, sign_changes_at(ch, hi), vb))
            continue
        vm = sign_changes_at(ch, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.sort()
    if width is not None:
        out = [refine_root(f, iv, width) for iv in out]
    return out


def refine_root(p, iv: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval until it is narrower than ``width``."""
    f = as_flint(p)
    a, b = iv
    if a == b:
        return iv
    fa = _sign(f(_fq(a)))
    while b - a >= width:
        m = (a + b) / 2
        fm = _sign(f(_fq(m)))
        if fm == 0:
            return (m, m)
        if fa == 0:
            # a itself is not a root of the isolated factor here; use Sturm counts
            if count_roots(f, a, m) >= 1:
                b = m
            else:
                a = m
            fa = _sign(f(_fq(a)))
            continue
        if fm != fa:
            b = m
        else:
            a, fa = m, fm
    return (a, b)


def largest_real_root_bound(p) -> Fraction | None:
    """Rational upper end of the interval isolating the largest real root."""
    ivs = isolate_real_roots(p)
    if not ivs:
        return None
    return max(b for _, b in ivs)


def descartes_no_root_at_or_above(p, n0: Fraction) -> bool:
    """Fast sufficient test: coefficients of p(n0 + x) show no sign variation
    and p(n0) != 0, hence p has no real root in [n0, +inf)."""
    f = as_flint(p)
    if f.degree() < 0:
        return False
    g = f(flint.fmpq_poly([_fq(n0), 1]))
    signs = [_sign(g[i]) for i in range(g.degree() + 1)]
    if signs[0] == 0:
        return False
    return _variations(signs) == 0
