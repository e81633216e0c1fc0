"""The four families of cubic potentials passing the first order test.

Every V_{a,b} (normalised at z = 1) whose Darboux point eigenvalues are all
in the eigenvalue table lies in one of E1 (eigenvalue -1), E2, E3 (one Darboux
point, index k) or E4 (two Darboux points, indices k1 and k2).  E4 carries a
square root s with s^2 = 6 l1^2 l2 + 6 l1 l2^2 - 36 l1 l2 where
l_i = k_i (k_i + 1) / 2 is the shifted eigenvalue U''/U.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import flint

from ..algebra.scalars import sqrt_in_tower
from ..algebra.mpoly import MPoly
from ..algebra.resultant import resultant
from ..algebra.unipoly import UniPoly
from .darboux import simplify
from .derivatives import monomial_derivatives
from .potential import TrigPotential
from .symbolic import CTX, RF, QuadRF, gens


def shifted_lambda(k: int) -> Fraction:
    """U''/U at a Darboux point of index k."""
    return Fraction(k * (k + 1), 2)


def e1(b) -> TrigPotential:
    return TrigPotential((1 - Fraction(1, 3) * b, b, -b, Fraction(1, 3) * b))


def e2(k: int) -> TrigPotential:
    kk = Fraction(k * (k + 1))
    return TrigPotential((1 - kk / 12, 0, kk / 4, -kk / 6))


def e3(k: int) -> TrigPotential:
    kk = Fraction(k * (k + 1))
    return TrigPotential((1 - kk / 4, kk / 2, -kk / 4, 0))


def family1(k: int) -> TrigPotential:
    """E2 at even index 2k."""
    return e2(2 * k)


def family2(k: int) -> TrigPotential:
    """E3 at even index 2k."""
    return e3(2 * k)


def e4_discriminant(l1, l2):
    return 6 * l1 * l1 * l2 + 6 * l1 * l2 * l2 - 36 * l1 * l2


def _e4_coeffs(l1, l2, s):
    D = l1 + l2
    return ((-9 * l1 * l2 - l2 * s + 18 * l1 + 18 * l2 - 3 * l2 * l2) / (18 * D),
            (6 * l1 + s) * l2 / (6 * D),
            -(3 * l1 + s - 3 * l2) * l2 / (6 * D),
            (s - 6 * l2) * l2 / (18 * D))


def e4(k1: int, k2: int, sign: int = 1) -> TrigPotential:
    """E4 with s = sign * sqrt(d); coefficients in Q or in Q(sqrt d)."""
    if k1 in (0, 3):
        raise ValueError("k1 = 0 and k1 = 3 are excluded from E4")
    l1, l2 = shifted_lambda(k1), shifted_lambda(k2)
    s = sqrt_in_tower(e4_discriminant(l1, l2))[0] * sign
    return TrigPotential(tuple(simplify(c) for c in _e4_coeffs(l1, l2, s)))


def e4_second_point(k1: int, k2: int, sign: int = 1):
    l1, l2 = shifted_lambda(k1), shifted_lambda(k2)
    s = sqrt_in_tower(e4_discriminant(l1, l2))[0] * sign
    return simplify((s + 6 * l1) / (s - 6 * l2))


# the resultant P_{a,b}(lambda) -----------------------------------------------------

_AB = ("a", "b", "L")  # L = lambda + 1


def _hab():
    a, b, L = MPoly.gens(_AB)
    one = MPoly.const(Fraction(1), _AB)
    h = UniPoly([a, b, 3 * one - 3 * a - 2 * b, 2 * a + b - 2 * one], "z")
    htil = UniPoly([0 * one, -b, -4 * (3 * one - 3 * a - 2 * b), -9 * (2 * a + b - 2 * one)], "z")
    return a, b, L, one, h, htil


def eigen_resultant() -> MPoly:
    """res_z(U'' - (lambda+1) U, h') as a polynomial in a, b, L = lambda + 1."""
    a, b, L, one, h, htil = _hab()
    return resultant(htil - h * L, h.derivative())


def displayed_eigen_resultant() -> MPoly:
    a, b, L, one, _, _ = _hab()
    f3 = (-18 * a * b ** 2 - 6 * b ** 3 + 18 * b ** 2
          + L * (108 * a ** 3 + 108 * a ** 2 * b - 216 * a ** 2 + 36 * a * b ** 2 + 108 * a
                 - 108 * a * b - 9 * b ** 2 + 4 * b ** 3))
    return (2 * a + b - 2 * one) * (6 * a + 2 * b - 6 * one + L) * f3


def _special(b_value, divide_z: bool) -> MPoly:
    a, b, L, one, h, htil = _hab()
    sub = lambda p: UniPoly([c.subs(1, b_value(a, one)) for c in p.coeffs], "z")
    h, htil = sub(h), sub(htil)
    dh = h.derivative()
    if divide_z:
        dh = UniPoly(dh.coeffs[1:], "z")
    return resultant(htil - h * L, dh)


def special_loci() -> Dict[str, Tuple[MPoly, MPoly]]:
    """(computed, displayed) resultants on the loci b = 0 and b = 2 - 2a."""
    a, b, L, one, _, _ = _hab()
    q1 = _special(lambda a, one: 0 * one, True)
    q2 = _special(lambda a, one: 2 * one - 2 * a, False)
    return {
        "b=0": (q1, 216 * (a - one) ** 3 * (6 * a - 6 * one + L)),
        "b=2-2a": (q2, -4 * (a - one) ** 2 * (2 * a - 2 * one + L)),
    }


def proportional(p: MPoly, q: MPoly) -> Fraction | None:
    """c with p = c q, or None."""
    if q.is_zero():
        return None if not p.is_zero() else Fraction(0)
    e, c = q.leading()
    ratio = Fraction(p.terms.get(e, 0)) / Fraction(c)
    return ratio if (p - q * ratio).is_zero() else None


def e4_satisfies_eigen_factors() -> bool:
    """E4's (a, b) make the second and third factors vanish at L = l2 and L = l1."""
    l1, l2, *_ = gens()
    d = e4_discriminant(l1, l2)
    s = QuadRF(0, 1, d)
    a, b, _, _ = _e4_coeffs(QuadRF(l1, 0, d), QuadRF(l2, 0, d), s)
    f2 = 6 * a + 2 * b - 6 + QuadRF(l2, 0, d)
    L = QuadRF(l1, 0, d)
    f3 = (-18 * a * b * b - 6 * b ** 3 + 18 * b * b
          + L * (108 * a ** 3 + 108 * a * a * b - 216 * a * a + 36 * a * b * b + 108 * a
                 - 108 * a * b - 9 * b * b + 4 * b ** 3))
    return f2.is_zero() and f3.is_zero()


# symbolic derivatives and conditions of E4 ----------------------------------------------

@dataclass
class PointConditions:
    """At the Darboux point of index k_i: d222 = i t, and the obstruction C."""
    t: QuadRF
    d122: QuadRF
    d2222: QuadRF
    C: QuadRF  # d122^2 F1 - t^2 F2 + d2222 F3

    def Q(self) -> RF:
        """C * C(s -> -s)."""
        return self.C.norm()


@lru_cache(maxsize=None)
def e4_symbolic() -> Tuple[PointConditions, PointConditions]:
    """Conditions at the point of index k1 (z2) and of index k2 (z = 1)."""
    l1, l2, F1, F2, F3 = gens()
    d = e4_discriminant(l1, l2)
    s = QuadRF(0, 1, d)
    h = _e4_coeffs(QuadRF(l1, 0, d), QuadRF(l2, 0, d), s)
    zero = QuadRF(0, 0, d)
    z2 = (s + 6 * l1) / (s - 6 * l2)
    hz2 = sum((h[m] * z2 ** m for m in range(4)), zero)
    at_z2 = [h[m] * z2 ** m / hz2 for m in range(4)]
    h1 = sum(h, zero)
    at_1 = [hm / h1 for hm in h]
    out = []
    for alpha, lam in ((at_z2, l1 - 1), (at_1, l2 - 1)):
        tab = [monomial_derivatives(m) for m in range(4)]
        d122 = sum((alpha[m] * tab[m][0] for m in range(4)), zero)
        t = sum((alpha[m] * (tab[m][1].im if tab[m][1] != 0 else 0) for m in range(4)), zero)
        d2222 = sum((alpha[m] * tab[m][2] for m in range(4)), zero)
        if not (d122 + 3 * lam).is_zero():
            raise ArithmeticError("Euler relation d122 = -3 lambda violated")
        C = d122 * d122 * F1 - t * t * F2 + d2222 * F3
        out.append(PointConditions(t, d122, d2222, C))
    return out[0], out[1]


# k-substitution l = k(k+1)/2 -------------------------------------------------------------

KNAMES = ("k1", "k2", "F1", "F2", "F3")
KCTX = flint.fmpq_mpoly_ctx.get(KNAMES, "lex")


def to_k(p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
    """Substitute l_i = k_i (k_i + 1) / 2."""
    k1, k2, F1, F2, F3 = KCTX.gens()
    half = flint.fmpq(1, 2)
    images = [k1 * (k1 + 1) * half, k2 * (k2 + 1) * half, F1, F2, F3]
    out = KCTX.from_dict({})
    for mon, c in zip(p.monoms(), p.coeffs()):
        term = KCTX.constant(c)
        for g, e in zip(images, mon):
            if e:
                term = term * g ** e
        out = out + term
    return out


def displayed_w2() -> flint.fmpq_mpoly:
    """w^2 in the l-variables, from its displayed form in k2."""
    l1, l2, F1, F2, F3 = CTX.gens()
    # (k+2)^2 (k-1)^2 = 4 (l2 - 1)^2 and (k+3)(k-2) = 2 l2 - 6
    return 36 * (l2 - 1) ** 2 * F1 * F2 - 6 * (2 * l2 - 6) * F2 * F3 + 36 * F3 ** 2
