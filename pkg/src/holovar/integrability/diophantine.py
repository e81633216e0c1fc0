"""Non-negative integer points on a plane curve R(k1, k2) = 0 whose infinite
branches have vertical or horizontal asymptotes at non-integer abscissae.

For each orientation (solve in v, parameter p) the argument is:

* every root v of R(., p) stays bounded as p grows iff the leading
  coefficient in v has maximal p-degree; the limits are then the roots of
  the top p-coefficient, a polynomial L(v) (otherwise no bracket is allowed
  and the real non-negative roots must die out);
* bracket each non-negative root of L between consecutive integers a, a+1;
* past the largest real root B of disc_v(R) * lc_v(R) * R(0,p) * prod R(a,p) R(a+1,p)
  the number of roots in [0, a), (a, a+1), ... cannot change, so counting
  them at p = B settles all p >= B;
* if every non-negative root at p = B sits inside a bracket, no integer
  point has p >= B.

Both orientations give a finite box that is scanned exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Optional, Tuple

import flint

from ..algebra.roots import count_roots, isolate_real_roots, refine_root, cauchy_bound
from ..algebra.scalars import format_rational

NAMES = ("k1", "k2")
CTX = flint.fmpq_mpoly_ctx.get(NAMES, "lex")


class MethodInapplicable(ValueError):
    pass


def _fr(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def mixed_parity_quartic() -> flint.fmpq_mpoly:
    """The quartic governing mixed-parity pairs of the two-point family."""
    k1, k2 = CTX.gens()
    return (k2 ** 2 * k1 ** 2 + k2 * k1 ** 2 - 75 * k1 ** 2 - 75 * k1 + k2 * k1
            - 27 * k2 + k2 ** 2 * k1 - 27 * k2 ** 2)


@dataclass
class DiophantineCurve:
    R: flint.fmpq_mpoly

    @classmethod
    def from_dict(cls, terms: Dict[Tuple[int, int], Fraction]) -> "DiophantineCurve":
        return cls(CTX.from_dict({e: _fq(c) for e, c in terms.items()}))

    def __call__(self, k1, k2) -> Fraction:
        v = self.R.subs({"k1": _fq(k1), "k2": _fq(k2)})
        return Fraction(0) if v.is_zero() else _fr(v.leading_coefficient())

    def coefficients_in(self, var: int) -> List[flint.fmpq_poly]:
        """R = sum_j a_j(p) v^j with v = NAMES[var] and p the other variable."""
        other = 1 - var
        buckets: Dict[int, Dict[int, Fraction]] = {}
        for mon, c in zip(self.R.monoms(), self.R.coeffs()):
            buckets.setdefault(mon[var], {})[mon[other]] = _fr(c)
        top = max(buckets)
        out = []
        for j in range(top + 1):
            b = buckets.get(j, {})
            deg = max(b, default=-1)
            out.append(flint.fmpq_poly([_fq(b.get(i, 0)) for i in range(deg + 1)]))
        return out


@dataclass
class BranchCertificate:
    variable: str
    parameter: str
    limit_poly: List[Fraction]
    brackets: List[Tuple[int, int]]   # (a, a+1) around each non-negative limit
    critical_poly_degree: int
    largest_critical_root: Optional[Fraction]  # upper end of its isolating interval
    bound: int                          # no integer point with parameter >= bound
    counts_at_bound: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "parameter": self.parameter,
            "limit_poly": [format_rational(c) for c in self.limit_poly],
            "brackets": [list(b) for b in self.brackets],
            "critical_poly_degree": self.critical_poly_degree,
            "largest_critical_root_upper": None if self.largest_critical_root is None
            else format_rational(self.largest_critical_root),
            "bound": self.bound,
            "counts_at_bound": dict(sorted(self.counts_at_bound.items())),
        }


@dataclass
class DiophantineResult:
    points: List[Tuple[int, int]]
    certificates: List[BranchCertificate]
    box: Tuple[int, int]

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points], "box": list(self.box),
                "certificates": [c.to_json() for c in self.certificates]}


def _nonneg_roots(p: flint.fmpq_poly) -> List[Tuple[Fraction, Fraction]]:
    out = []
    for a, b in isolate_real_roots(p):
        if b < 0:
            continue
        if a < 0 <= b:
            if p(flint.fmpq(0)) == 0:
                out.append((Fraction(0), Fraction(0)))
                continue
            if count_roots(p, Fraction(0), b) == 0:
                continue
            a = Fraction(0)
        out.append((a, b))
    return out


def _brackets(L: flint.fmpq_poly) -> List[Tuple[int, int]]:
    out = []
    for lo, hi in _nonneg_roots(L):
        # isolating intervals are (lo, hi]; shrink until one integer gap holds the root
        while lo != hi and floor(lo) != floor(hi) and not (hi == floor(hi) and hi - 1 <= lo):
            lo, hi = refine_root(L, (lo, hi), (hi - lo) / 2)
        if lo == hi:
            if lo == floor(lo):
                raise MethodInapplicable(f"branch limit {lo} is an integer")
            a = floor(lo)
        elif hi == floor(hi):
            if L(_fq(hi)) == 0:
                raise MethodInapplicable(f"branch limit {hi} is an integer")
            a = int(hi) - 1
        else:
            a = floor(lo)
        out.append((a, a + 1))
    return out


def branch_certificate(curve: DiophantineCurve, var: int, bound_hint: int = 50) -> BranchCertificate:
    coeffs = curve.coefficients_in(var)
    dv = len(coeffs) - 1
    if dv < 1:
        raise MethodInapplicable(f"R does not involve {NAMES[var]}")
    degs = [c.degree() for c in coeffs]
    m = degs[dv]
    bounded = all(d <= m for d in degs)
    if bounded:
        L = flint.fmpq_poly([c[m] if c.degree() >= m else 0 for c in coeffs])
        brackets = _brackets(L)
    else:
        # some roots grow without bound; acceptable only if no real one stays >= 0
        L, brackets = flint.fmpq_poly([]), []

    disc = curve.R.resultant(curve.R.derivative(NAMES[var]), NAMES[var])
    crit = _to_uni(disc, 1 - var) * coeffs[dv] * coeffs[0]
    for a, b in brackets:
        for x in (a, b):
            crit = crit * _to_uni(curve.R.subs({NAMES[var]: _fq(x)}), 1 - var)
    if crit == 0:
        raise MethodInapplicable("critical polynomial vanishes identically (repeated component)")
    ivs = isolate_real_roots(crit)
    top = max((b for _, b in ivs), default=None)
    bound = bound_hint
    if top is not None and top >= bound:
        bound = floor(top) + 1
    # count the roots of R(., bound) in [0, inf) and inside each bracket
    slice_poly = _to_uni(curve.R.subs({NAMES[1 - var]: _fq(bound)}), var)
    B = cauchy_bound(slice_poly)
    total = count_roots(slice_poly, Fraction(0), B) + (slice_poly(flint.fmpq(0)) == 0)
    counts = {"nonnegative": total}
    inside = 0
    for a, b in brackets:
        c = count_roots(slice_poly, Fraction(a), Fraction(b))
        counts[f"({a},{b})"] = c
        inside += c
    if inside != total:
        what = "outside the brackets" if bounded else "on a branch without vertical asymptote"
        raise MethodInapplicable(
            f"at {NAMES[1 - var]} = {bound} some non-negative roots in {NAMES[var]} lie {what}")
    return BranchCertificate(NAMES[var], NAMES[1 - var], [_fr(c) for c in L.coeffs()], brackets,
                             crit.degree(), top, bound, counts)


def _to_uni(p: flint.fmpq_mpoly, var: int) -> flint.fmpq_poly:
    d: Dict[int, Fraction] = {}
    for mon, c in zip(p.monoms(), p.coeffs()):
        if mon[1 - var]:
            raise ValueError("polynomial depends on the other variable")
        d[mon[var]] = _fr(c)
    top = max(d, default=-1)
    return flint.fmpq_poly([_fq(d.get(i, 0)) for i in range(top + 1)])


def solve_diophantine_asymptote(curve, bound_hint: int = 50) -> DiophantineResult:
    if not isinstance(curve, DiophantineCurve):
        curve = DiophantineCurve(curve)
    c1 = branch_certificate(curve, 0, bound_hint)  # k2 >= c1.bound excluded
    c2 = branch_certificate(curve, 1, bound_hint)  # k1 >= c2.bound excluded
    points = []
    for a in range(c2.bound):
        col = _to_uni(curve.R.subs({"k1": _fq(a)}), 1)
        for b in range(c1.bound):
            if col(_fq(b)) == 0:
                points.append((a, b))
    return DiophantineResult(points, [c1, c2], (c2.bound, c1.bound))


def limit_interval(cert: BranchCertificate) -> Tuple[int, int]:
    """The bracket of the positive branch limit (exact sign change of L)."""
    L = flint.fmpq_poly([_fq(c) for c in cert.limit_poly])
    for a, b in cert.brackets:
        if L(_fq(a)) * L(_fq(b)) < 0:
            return a, b
    raise ValueError("no sign change bracket")
