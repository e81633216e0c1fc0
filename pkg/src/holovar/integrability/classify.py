"""Decision tree for V = r^-1 h(e^{i theta}), deg h <= 3.

Order 1 uses the eigenvalue table (and U'' = 0 at degenerate points unless
only meromorphy away from r = 0 is asked for), order 2 the vanishing of
d222 at odd indices, order 3 the linear condition in f1, f2, f3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ..algebra.scalars import scalar_to_json
from .conditions import f_values, order2_check, order3_check
from .darboux import DarbouxData, darboux_points, normalize_at, simplify
from .derivatives import cartesian_derivatives
from .potential import TrigPotential

KNOWN = "known-integrable"
OPEN = "open"

# (name, status); names use z = e^{i theta}
FAMILIES = {
    "a": KNOWN,
    "a+bz": KNOWN,
    "az+bz^3": KNOWN,
    "a+bz^2": OPEN,
    "a+bz^3": OPEN,
    "(a+bz)^3": OPEN,
}
STRICT_EXTRA = ("(a+bz)^2", "(a+bz)^2(a-2bz)")


def _z(x) -> bool:
    return simplify(x) == 0


def match_family(V: TrigPotential, strict_meromorphy: bool = False) -> Optional[str]:
    """First listed family containing V (known-integrable ones first)."""
    a, b, c, d = V.coeffs
    if _z(b) and _z(c) and _z(d):
        return "a"
    if _z(c) and _z(d):
        return "a+bz"
    if _z(a) and _z(c):
        return "az+bz^3"
    if _z(b) and _z(d):
        return "a+bz^2"
    if _z(b) and _z(c):
        return "a+bz^3"
    if _z(b * b - 3 * a * c) and _z(c * c - 3 * b * d) and _z(b * c - 9 * a * d):
        return "(a+bz)^3"
    if strict_meromorphy:
        if _z(d) and _z(b * b - 4 * a * c):
            return "(a+bz)^2"
        if _z(b) and _z(4 * c ** 3 + 27 * a * d * d):
            return "(a+bz)^2(a-2bz)"
    return None


@dataclass
class PointReport:
    point: DarbouxData
    U2: object = None                 # at degenerate points
    derivatives: Optional[dict] = None
    checks: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        out = self.point.to_json()
        if self.U2 is not None:
            out["U2"] = scalar_to_json(self.U2)
        if self.derivatives is not None:
            out["derivatives"] = self.derivatives
        out["checks"] = self.checks
        return out


@dataclass
class Classification:
    potential: TrigPotential
    points: List[PointReport]
    verdict: str                      # integrable-candidate | non-integrable | open
    obstruction: Optional[dict]
    family: Optional[str]
    status: Optional[str]
    strict_meromorphy: bool = False
    note: str = ""

    @property
    def failed_order(self) -> Optional[int]:
        return None if self.obstruction is None else self.obstruction["order"]

    def to_json(self) -> dict:
        return {
            "input": self.potential.to_json(),
            "darboux_points": [p.to_json() for p in self.points],
            "verdict": self.verdict,
            "obstruction": self.obstruction,
            "family": self.family,
            "status": self.status,
            "strict_meromorphy": self.strict_meromorphy,
            "note": self.note,
        }


def _fail(V, reports, order, value, reason, strict) -> Classification:
    return Classification(V, reports, "non-integrable",
                          {"order": order, "value": scalar_to_json(value), "reason": reason},
                          None, None, strict)


def classify(V: TrigPotential, strict_meromorphy: bool = False) -> Classification:
    if V.is_constant():
        return Classification(V, [], "integrable-candidate", None, "a", KNOWN, strict_meromorphy,
                              "constant h: no Darboux point")
    points = darboux_points(V)
    reports = [PointReport(p) for p in points]
    nondeg = [r for r in reports if not r.point.degenerate]

    # order 1 --------------------------------------------------------------
    for r in reports:
        if r.point.degenerate:
            r.U2 = simplify(V.U2(r.point.z0))
            if not strict_meromorphy and r.U2 != 0:
                r.checks.append({"order": 1, "passed": False, "reason": "degenerate point with U'' != 0"})
                return _fail(V, reports, 1, r.U2, "degenerate Darboux point with U'' != 0",
                             strict_meromorphy)
            r.checks.append({"order": 1, "passed": True})
    for r in nondeg:
        if r.point.k is None:
            r.checks.append({"order": 1, "passed": False, "reason": "eigenvalue not in table"})
            return _fail(V, reports, 1, r.point.lam, "eigenvalue not in table", strict_meromorphy)
        r.checks.append({"order": 1, "passed": True})

    # orders 2 and 3 ---------------------------------------------------------
    data = []
    for r in nondeg:
        dd = cartesian_derivatives(normalize_at(V, r.point))
        r.derivatives = dd.to_json()
        data.append((r, dd))
    # every point is evaluated before reporting the first failure
    results = []
    for r, dd in data:
        res = order2_check(dd, r.point.k)
        r.checks.append(res.to_json())
        results.append(res)
    bad = next((x for x in results if not x.passed), None)
    if bad is not None:
        return _fail(V, reports, 2, bad.value, bad.reason, strict_meromorphy)
    results = []
    for r, dd in data:
        k = r.point.k
        fs = f_values(k) if k >= 1 else (None, None, None)
        res = order3_check(dd, k, *fs)
        r.checks.append(res.to_json())
        results.append(res)
    bad = next((x for x in results if not x.passed), None)
    if bad is not None:
        return _fail(V, reports, 3, bad.value, bad.reason, strict_meromorphy)

    fam = match_family(V, strict_meromorphy)
    if fam is None:
        return Classification(V, reports, "integrable-candidate", None, None, None, strict_meromorphy,
                              "passes orders 1 to 3 but lies in no listed family")
    if fam in STRICT_EXTRA:
        return Classification(V, reports, "open", None, fam, OPEN, strict_meromorphy,
                              "only degenerate Darboux points; open for first integrals "
                              "meromorphic away from r = 0")
    return Classification(V, reports, "integrable-candidate", None, fam, FAMILIES[fam], strict_meromorphy)


OPEN_REPRESENTATIVES = {
    "e^{2i theta}": (0, 0, 1, 0),
    "e^{2i theta} - 1": (-1, 0, 1, 0),
    "e^{3i theta} - 1": (-1, 0, 0, 1),
    "(e^{i theta} - 1)^3": (-1, 3, -3, 1),
}
STRICT_OPEN_REPRESENTATIVES = {
    "(e^{i theta} - 1)^2": (1, -2, 1, 0),
    "(e^{i theta} - 1)^2 (2e^{i theta} + 1)": (1, 0, -3, 2),
}
