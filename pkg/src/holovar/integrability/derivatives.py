"""Cartesian derivatives of V at the normalised Darboux point c = (1, 0).

With q = (1 + x, y) and rho = |q|, a monomial z^m of h contributes
(1 + x + i y)^m rho^-(m+1) to V.  Each contribution is expanded once as a
Taylor2 polynomial; V's expansion is the linear combination with the
coefficients of the normalised h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from ..algebra.scalars import GaussianRational, I, scalar_to_json
from ..algebra.taylor2 import Taylor2, binomial_series
from .darboux import simplify
from .potential import TrigPotential


class NotNormalized(ValueError):
    pass


@lru_cache(maxsize=None)
def monomial_expansion(m: int) -> Taylor2:
    x, y = Taylor2.x(), Taylor2.y()
    rho2_minus_1 = x * 2 + x * x + y * y
    w = Taylor2.const(GaussianRational(1)) + x + y * I
    return w ** m * binomial_series(rho2_minus_1, Fraction(-(m + 1), 2))


def expansion(hhat: TrigPotential) -> Taylor2:
    acc = Taylor2()
    for m, c in enumerate(hhat.coeffs):
        if c != 0:
            acc = acc + monomial_expansion(m) * c
    return acc


# (d122, d222, d2222) of each monomial; linear in the coefficients of h
@lru_cache(maxsize=None)
def monomial_derivatives(m: int) -> Tuple:
    t = monomial_expansion(m)
    return (simplify(2 * t[(1, 2)]), simplify(6 * t[(0, 3)]), simplify(24 * t[(0, 4)]))


@dataclass(frozen=True)
class DerivativeData:
    d122: object
    d222: object
    d2222: object

    # shorthands with the Taylor factors divided out
    @property
    def a(self):
        return self.d122

    @property
    def b(self):
        return simplify(self.d222 / 2)

    @property
    def c(self):
        return simplify(self.d2222 / 6)

    def to_json(self) -> dict:
        return {"d122": scalar_to_json(self.d122), "d222": scalar_to_json(self.d222),
                "d2222": scalar_to_json(self.d2222)}


def derivatives_linear(coeffs) -> DerivativeData:
    """Combine the monomial table over any ring holding the coefficients."""
    acc = [0, 0, 0]
    for m, c in enumerate(coeffs):
        for j, v in enumerate(monomial_derivatives(m)):
            if v != 0:
                acc[j] = acc[j] + c * v
    return DerivativeData(*acc)


def cartesian_derivatives(hhat: TrigPotential, check: bool = True) -> DerivativeData:
    if hhat(1) != 1 or hhat.dh(1) != 0:
        raise NotNormalized("need h(1) = 1 and h'(1) = 0")
    t = expansion(hhat)
    if check:
        lam = simplify(hhat.U2(1) - 1)
        # Euler relation for degree -1 and the Hessian eigenvalue lambda
        expected = {(0, 0): 1, (1, 0): -1, (0, 1): 0, (2, 0): 1, (1, 1): 0, (0, 2): lam / 2}
        for e, v in expected.items():
            if simplify(t[e]) != v:
                raise ArithmeticError(f"Taylor coefficient {e} is {t[e]}, expected {v}")
    return DerivativeData(simplify(2 * t[(1, 2)]), simplify(6 * t[(0, 3)]), simplify(24 * t[(0, 4)]))
