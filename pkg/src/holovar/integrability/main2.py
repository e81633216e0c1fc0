"""End-to-end reproduction of the classification of r^-1 h(e^{i theta}), deg h <= 3.

Every stage records its outcome; disagreements with the expected values are
collected (never fail-fast) so a run lists all of them at once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional

import flint

from ..algebra.scalars import format_rational
from ..asympt import CertificationFailure
from .classify import (
    FAMILIES,
    OPEN_REPRESENTATIVES,
    STRICT_EXTRA,
    STRICT_OPEN_REPRESENTATIVES,
    classify,
)
from .diophantine import limit_interval, mixed_parity_quartic, solve_diophantine_asymptote
from .families import (
    displayed_eigen_resultant,
    e1,
    e2,
    e3,
    e4,
    e4_satisfies_eigen_factors,
    eigen_resultant,
    proportional,
    special_loci,
)
from .pipelines import (
    default_approximants,
    displayed_family_coeffs,
    e23_order3_pipeline,
    e4_instance,
    e4_order2_pipeline,
    e4_order3_pipeline,
    family_condition_coeffs,
    family_derivative_polys,
)
from .potential import TrigPotential

SIX = sorted(FAMILIES)


class _Checks:
    def __init__(self):
        self.items: List[dict] = []

    def expect(self, name: str, got, want) -> bool:
        ok = got == want
        self.items.append({"check": name, "ok": ok, "got": _js(got), "expected": _js(want)})
        return ok

    @property
    def mismatches(self) -> List[dict]:
        return [c for c in self.items if not c["ok"]]


def _js(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, tuple, set)):
        return [_js(v) for v in (sorted(x) if isinstance(x, set) else x)]
    return x


def _family_derivation(ck: _Checks) -> dict:
    ratio = proportional(eigen_resultant(), displayed_eigen_resultant())
    loci = {name: proportional(c, d) for name, (c, d) in special_loci().items()}
    ck.expect("eigenvalue resultant matches its factorised form", ratio, Fraction(1))
    # the b = 0 locus agrees up to the sign convention of the Sylvester determinant
    ck.expect("locus b = 0 proportional", loci["b=0"] in (Fraction(1), Fraction(-1)), True)
    ck.expect("locus b = 2 - 2a proportional", loci["b=2-2a"] in (Fraction(1), Fraction(-1)), True)
    ck.expect("E4 annihilates the eigenvalue factors", e4_satisfies_eigen_factors(), True)
    return {"resultant_ratio": format_rational(ratio),
            "locus_ratios": {k: None if v is None else format_rational(v) for k, v in loci.items()}}


def _order2(ck: _Checks) -> dict:
    k = flint.fmpq_poly([0, 1])
    t2 = family_derivative_polys("E2", k)[1]
    t3 = family_derivative_polys("E3", k)[1]
    ck.expect("E2 d222 = (5/2) i k (k+1)", t2 == flint.fmpq(5, 2) * k * (k + 1), True)
    ck.expect("E3 d222 = (3/2) i k (k+1)", t3 == flint.fmpq(3, 2) * k * (k + 1), True)
    r = e4_order2_pipeline()
    ck.expect("E4 order 2 survivors are even-even", r.surviving_parity, "even-even")
    ck.expect("E4 mixed parity conditions match the displayed quartic", r.quartic_matches, True)
    return {"E2_d222_over_i": str(t2), "E3_d222_over_i": str(t3), "E4": r.to_json()}


def _diophantine(ck: _Checks) -> dict:
    res = solve_diophantine_asymptote(mixed_parity_quartic())
    ck.expect("integer points of the quartic", res.points, [(0, 0), (6, 14)])
    lims = sorted(limit_interval(c) for c in res.certificates)
    ck.expect("branch limits bracketed", lims, [(4, 5), (8, 9)])
    return res.to_json()


def _order3(ck: _Checks, k_limit: int, approx) -> dict:
    out: Dict[str, object] = {}
    e23_limit = max(k_limit // 2, 1)
    for which in (1, 2):
        ck.expect(f"family {which} condition coefficients",
                  [a == b for a, b in zip(family_condition_coeffs(which), displayed_family_coeffs(which))],
                  [True, True, True])
        r = e23_order3_pipeline(which, e23_limit, approx)
        ck.expect(f"family {which} exact zeros", r.exact_zeros, [])
        if r.tail is not None:
            ck.expect(f"family {which} amplification <= 33/32", r.tail.amplification <= Fraction(33, 32), True)
        out[f"family{which}"] = r.to_json()
    r4 = e4_order3_pipeline(k_limit, approx, with_tail=approx is not None)
    ck.expect("E4 order 3 survivors", r4.survivors, [(2, 2)] if k_limit > 2 else [])
    ck.expect("E4 conditions symmetric in (k1, k2)", r4.symmetric, True)
    if r4.tail is not None:
        ck.expect("E4 tail coefficients share one sign", r4.tail.same_sign, True)
    inst = e4_instance(6, 14)
    ck.expect("(6,14) fails order 3 for both valuations", inst.passes(), [])
    out["E4"] = r4.to_json()
    out["E4_6_14"] = inst.to_json()
    return out


def _exceptions(ck: _Checks, strict: bool) -> dict:
    out = {}
    reps = dict(OPEN_REPRESENTATIVES)
    if strict:
        reps.update(STRICT_OPEN_REPRESENTATIVES)
    for name, coeffs in reps.items():
        c = classify(TrigPotential(coeffs), strict)
        out[name] = {"verdict": c.verdict, "family": c.family, "status": c.status}
        ck.expect(f"{name} is open", c.status, "open")
    for name, coeffs in STRICT_OPEN_REPRESENTATIVES.items():
        if not strict:
            c = classify(TrigPotential(coeffs), False)
            out[name] = {"verdict": c.verdict, "family": c.family, "status": c.status}
            ck.expect(f"{name} excluded without the flag", c.verdict, "non-integrable")
    return out


def _sweep(ck: _Checks, strict: bool, k_max: int) -> dict:
    """Classify concrete members of E1-E4 and the critical-point-free cases."""
    pots = [e1(Fraction(b)) for b in (1, -2, Fraction(3, 5))]
    pots += [e2(k) for k in range(1, k_max)] + [e3(k) for k in range(1, k_max)]
    pots += [e4(a, b, s) for a in range(1, k_max) if a != 3 for b in range(1, k_max) for s in (1, -1)]
    pots += [TrigPotential(c) for c in [(2, 0, 0, 0), (1, 2, 0, 0), (1, 0, 3, 0), (0, 0, 5, 0),
                                        (2, 0, 0, -1), (0, 0, 0, 1), (0, 1, 0, 1), (8, 12, 6, 1),
                                        (1, -2, 1, 0), (1, 0, -3, 2)]]
    fams, verdicts = set(), {}
    for V in pots:
        c = classify(V, strict)
        verdicts[c.verdict] = verdicts.get(c.verdict, 0) + 1
        if c.verdict != "non-integrable":
            fams.add(c.family)
    want = set(SIX) | (set(STRICT_EXTRA) if strict else set())
    ck.expect("families found by the sweep", sorted(f or "unlisted" for f in fams), sorted(want))
    return {"potentials": len(pots), "verdicts": dict(sorted(verdicts.items())),
            "families": sorted(f or "unlisted" for f in fams)}


def reproduce_main2(k_limit: int = 200, n0: int = 100, eps=Fraction(1, 10 ** 5),
                    strict_meromorphy: bool = False, sweep_k: int = 12) -> dict:
    """Run every stage; raises CertificationFailure when a tail cannot be certified."""
    ck = _Checks()
    approx = default_approximants(n0, Fraction(eps))
    tails_possible = k_limit >= 2 * n0
    report = {
        "family_derivation": _family_derivation(ck),
        "order2": _order2(ck),
        "diophantine": _diophantine(ck),
        "order3": _order3(ck, k_limit, approx if tails_possible else None),
        "exceptions": _exceptions(ck, strict_meromorphy),
        "sweep": _sweep(ck, strict_meromorphy, sweep_k),
    }
    families = list(SIX)
    open_list = sorted(OPEN_REPRESENTATIVES) + (sorted(STRICT_OPEN_REPRESENTATIVES) if strict_meromorphy else [])
    report["checks"] = ck.items
    report["mismatches"] = ck.mismatches
    if tails_possible:
        report["status"] = "complete"
        report["summary"] = ("six families reproduced; E4 survivor set {(2,2)}; E2/E3 survivor set empty; "
                             "Diophantine set {(0,0),(6,14)}") if not ck.mismatches else "mismatches found"
    else:
        report["status"] = "bounded-scan only, no certified tail"
        report["summary"] = f"exact scans below {k_limit} only; the classification is not claimed"
    report["families"] = families
    report["open"] = open_list
    return report
