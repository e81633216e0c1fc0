"""Homogeneous potentials V = r^-1 h(e^{i theta}) with h a cubic in z."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..algebra.scalars import parse_scalar, scalar_to_json
from ..algebra.unipoly import UniPoly


def _canon(c):
    return Fraction(c) if isinstance(c, int) else c


@dataclass(frozen=True)
class TrigPotential:
    """Coefficients (a, b, c, d) of h(z) = a + b z + c z^2 + d z^3."""

    coeffs: Tuple

    def __post_init__(self):
        cs = tuple(_canon(c) for c in self.coeffs)
        if len(cs) > 4:
            if any(c != 0 for c in cs[4:]):
                raise ValueError("h must have degree <= 3")
            cs = cs[:4]
        cs = cs + (Fraction(0),) * (4 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text: str) -> "TrigPotential":
        """From ``"a,b,c,d"`` with rational or Gaussian literals."""
        parts = [p for p in text.split(",")]
        if not 1 <= len(parts) <= 4:
            raise ValueError("expected up to four comma separated coefficients")
        return cls(tuple(parse_scalar(p) for p in parts))

    @classmethod
    def from_ab(cls, a, b) -> "TrigPotential":
        """The two-parameter family with U(0) = 1 and U'(0) = 0."""
        return cls((a, b, 3 - 3 * a - 2 * b, 2 * a + b - 2))

    a = property(lambda self: self.coeffs[0])
    b = property(lambda self: self.coeffs[1])
    c = property(lambda self: self.coeffs[2])
    d = property(lambda self: self.coeffs[3])

    @property
    def h(self) -> UniPoly:
        return UniPoly(self.coeffs, "z")

    def __call__(self, z):
        return self.h(z)

    def dh(self, z):
        a, b, c, d = self.coeffs
        return b + 2 * c * z + 3 * d * z * z

    def d2h(self, z):
        return 2 * self.coeffs[2] + 6 * self.coeffs[3] * z

    def U2(self, z):
        """U''(theta) at z = e^{i theta}: -(z h' + z^2 h'')."""
        return -(z * self.dh(z) + z * z * self.d2h(z))

    def U3(self, z):
        """U'''(theta) = -i sum m^3 h_m z^m."""
        from ..algebra.scalars import I
        return -I * sum((m ** 3 * c * z ** m for m, c in enumerate(self.coeffs)), Fraction(0))

    def rotated(self, z0) -> "TrigPotential":
        """h(z * z0)."""
        return TrigPotential(tuple(c * z0 ** m for m, c in enumerate(self.coeffs)))

    def scaled(self, k) -> "TrigPotential":
        return TrigPotential(tuple(c * k for c in self.coeffs))

    def degree(self) -> int:
        return self.h.degree()

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_json(self):
        return [scalar_to_json(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        for m, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if m == 0 else f"({c}) e^({m}i t)")
        return "r^-1 (" + (" + ".join(terms) or "0") + ")"

