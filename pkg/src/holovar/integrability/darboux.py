"""Darboux points of r^-1 h(e^{i theta}) and their Hessian eigenvalues.

A Darboux point corresponds to a root z0 != 0 of h'.  The Hessian of V
there has eigenvalues {2, lambda} (multiplicator normalised to -1) with

    lambda = U''/U - 1 = -z0^2 h''(z0) / h(z0) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..algebra.scalars import GaussianRational, base_sqrt, QuadExt, rational_sqrt, scalar_to_json, sqrt_in_tower
from .potential import TrigPotential


class NoDarbouxPoint(ValueError):
    pass


class TowerOverflow(ArithmeticError):
    """A root would need a second, independent square root."""


class DegeneratePoint(ValueError):
    pass


def simplify(x):
    """Drop trivial tower levels: QuadExt with y = 0, Gaussian with im = 0."""
    if isinstance(x, QuadExt) and x.y == 0:
        x = x.x
    if isinstance(x, GaussianRational) and x.im == 0:
        x = x.re
    if isinstance(x, int):
        x = Fraction(x)
    return x


def as_rational(x) -> Optional[Fraction]:
    x = simplify(x)
    return x if isinstance(x, Fraction) else None


@dataclass(frozen=True)
class DarbouxData:
    z0: object
    degenerate: bool
    lam: object = None          # lambda, None when degenerate
    k: Optional[int] = None      # index with lambda = (k-1)(k+2)/2
    multiplicator: int = -1

    @property
    def lambda_shifted(self):
        return None if self.lam is None else simplify(self.lam + 1)

    def to_json(self) -> dict:
        return {
            "z0": scalar_to_json(self.z0),
            "degenerate": self.degenerate,
            "lambda": None if self.lam is None else scalar_to_json(self.lam),
            "k": self.k,
        }


def eigenvalue_k_index(lam) -> Optional[int]:
    """k >= 0 with lam = (k-1)(k+2)/2, or None ("not in table")."""
    q = as_rational(lam)
    if q is None:
        return None
    r = rational_sqrt(9 + 8 * q)
    if r is None or r.denominator != 1 or (r.numerator - 1) % 2:
        return None
    k = (r.numerator - 1) // 2
    return k if k >= 0 else None


def lambda_of_k(k: int) -> Fraction:
    return Fraction((k - 1) * (k + 2), 2)


def _sqrt(disc):
    disc = simplify(disc)
    if isinstance(disc, QuadExt):
        root = _sqrt_in_field(disc)
        if root is None:
            raise TowerOverflow("discriminant of h' has no square root in its field")
        return root
    root, _ = sqrt_in_tower(disc)
    return root


def _sqrt_in_field(w: QuadExt):
    """p + q sqrt(D) squaring to w, with p, q in the base, or None."""
    n = base_sqrt(w.norm())
    if n is None:
        return None
    for m in (n, -n):
        p = base_sqrt((w.x + m) / 2)
        if p is not None and p != 0:
            return QuadExt(p, w.y / (2 * p), w.d)
    q = base_sqrt(w.x / w.d)  # p = 0: w = q^2 D
    if q is not None and w.y == 0:
        return QuadExt(0 * q, q, w.d)
    return None


def critical_points(V: TrigPotential) -> List:
    """Roots z != 0 of h'(z) = b + 2 c z + 3 d z^2, without multiplicity."""
    _, b, c, d = V.coeffs
    if d != 0:
        if b == 0:
            roots = [-2 * c / (3 * d)]
        else:
            s = _sqrt(4 * c * c - 12 * b * d)
            if isinstance(s, QuadExt) and any(isinstance(simplify(x), QuadExt) for x in V.coeffs):
                if any(simplify(x).d != s.d for x in V.coeffs if isinstance(simplify(x), QuadExt)):
                    raise TowerOverflow("two independent square roots needed")
            roots = [(-2 * c + s) / (6 * d), (-2 * c - s) / (6 * d)]
    elif c != 0:
        roots = [-b / (2 * c)]
    else:
        roots = []
    out = []
    for z in roots:
        z = simplify(z)
        if z != 0 and z not in out:
            out.append(z)
    return out


def darboux_points(V: TrigPotential) -> List[DarbouxData]:
    if V.is_constant():
        raise NoDarbouxPoint("h is constant: every direction is critical")
    out = []
    for z0 in critical_points(V):
        hz = simplify(V(z0))
        if hz == 0:
            out.append(DarbouxData(z0, True))
            continue
        lam = simplify(V.U2(z0) / hz - 1)
        out.append(DarbouxData(z0, False, lam, eigenvalue_k_index(lam)))
    return out


def normalize_at(V: TrigPotential, dp: DarbouxData) -> TrigPotential:
    """h(z z0)/h(z0): the point moves to z = 1 and U(0) = 1."""
    if dp.degenerate:
        raise DegeneratePoint("cannot normalise at a degenerate Darboux point")
    hz = V(dp.z0)
    return TrigPotential(tuple(simplify(c * dp.z0 ** m / hz) for m, c in enumerate(V.coeffs)))
