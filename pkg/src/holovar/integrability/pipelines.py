"""Second and third order programs over the families E1-E4.

Finite ranges are settled by exact evaluation with recurrence values; the
infinite tails use certified approximants of f1, f2, f3 at even indices,
an amplification bound and sign certificates on [n0, inf).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from ..algebra.ratfun import RatFun
from ..algebra.scalars import format_rational, scalar_to_json
from ..algebra.sign import sign_certify_univariate
from ..asympt import CertificationFailure, CertifiedApprox, amplification, certify_approx
from .conditions import f_values, order3_value
from .darboux import darboux_points, normalize_at, simplify
from .derivatives import cartesian_derivatives
from .diophantine import CTX as DCTX
from .diophantine import DiophantineCurve, solve_diophantine_asymptote
from .families import (
    KCTX,
    e4,
    e4_discriminant,
    e4_symbolic,
    displayed_w2,
    shifted_lambda,
    to_k,
)
from .symbolic import CTX


def _fr(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


@lru_cache(maxsize=None)
def default_approximants(n0: int = 100, eps=Fraction(1, 10 ** 5)) -> Dict[str, CertifiedApprox]:
    return {w: certify_approx(w, eps, n0) for w in ("f1", "f2", "f3")}


# positivity on k >= 1 -----------------------------------------------------------------

def positive_for_k_at_least_1(p: flint.fmpq_mpoly) -> bool:
    """Sufficient test: p(1 + j1, 1 + j2, ...) has non-negative coefficients
    and a positive constant term."""
    gens = p.context().gens()
    shifted = p.compose(*[g + 1 for g in gens])
    coeffs = [_fr(c) for c in shifted.coeffs()]
    zero_mon = tuple(0 for _ in gens)
    const = next((_fr(c) for m, c in zip(shifted.monoms(), shifted.coeffs()) if tuple(m) == zero_mon),
                 Fraction(0))
    return all(c >= 0 for c in coeffs) and const > 0


def _project_k(p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
    """KCTX polynomial free of F's -> the (k1, k2) context of the solver."""
    d = {}
    for m, c in zip(p.monoms(), p.coeffs()):
        if any(m[2:]):
            raise ValueError("polynomial involves f-values")
        d[(m[0], m[1])] = c
    return DCTX.from_dict(d)


def _swap_k(p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
    k1, k2 = DCTX.gens()
    return p.compose(k2, k1)


# E4, order 2 ----------------------------------------------------------------------------

@dataclass
class FactorReport:
    factor: str
    multiplicity: int
    positive_for_k_ge_1: bool
    diophantine_points: Optional[List[Tuple[int, int]]] = None

    def to_json(self) -> dict:
        return {"factor": self.factor, "multiplicity": self.multiplicity,
                "positive_for_k_ge_1": self.positive_for_k_ge_1,
                "diophantine_points": None if self.diophantine_points is None
                else [list(p) for p in self.diophantine_points]}


@dataclass
class E4Order2Result:
    both_odd: List[FactorReport]
    mixed: List[FactorReport]
    surviving_parity: str
    mixed_solutions: List[Tuple[int, int]]
    quartic_matches: bool

    def to_json(self) -> dict:
        return {"both_odd_factors": [f.to_json() for f in self.both_odd],
                "mixed_factors": [f.to_json() for f in self.mixed],
                "surviving_parity": self.surviving_parity,
                "mixed_parity_solutions": [list(p) for p in self.mixed_solutions],
                "displayed_conditions_match": self.quartic_matches}


def _factor_reports(num: flint.fmpq_mpoly, solve: bool) -> List[FactorReport]:
    _, facs = num.factor()
    out = []
    for f, m in facs:
        pos = positive_for_k_at_least_1(f)
        pts = None
        if not pos and solve:
            pts = solve_diophantine_asymptote(DiophantineCurve(_project_k(f))).points
        out.append(FactorReport(str(f), int(m), pos, pts))
    return out


def e4_order2_pipeline(pairs: Sequence[Tuple[int, int]] = ()) -> E4Order2Result:
    """Exclude every (k1, k2) with an odd entry.

    Odd k needs d222 = 0 at that point; d222 = i t with t = x + y s.
    """
    c_k1, c_k2 = e4_symbolic()
    t1, t2 = c_k1.t, c_k2.t
    # both odd: t1 = t2 = 0 forces x1 y2 - x2 y1 = 0 (y1, y2 never vanish)
    elim = t1.x * t2.y - t2.x * t1.y
    both = _factor_reports(to_k(elim.num), solve=False)
    # k1 odd: t1 = 0 forces its norm to vanish
    norm1 = to_k(t1.norm().num)
    mixed = _factor_reports(norm1, solve=True)
    sols = set()
    for fr in mixed:
        for (a, b) in fr.diophantine_points or []:
            sols.add((a, b))
    # symmetric case k2 odd: the norm of t2 is the same curve with k1, k2 swapped
    norm2 = _project_k_or_none(to_k(t2.norm().num))
    sym = norm2 is not None and _project_k_or_none(norm1) is not None and \
        _swap_k(_project_k(norm1)) == norm2
    mixed_solutions = sorted({(a, b) for a, b in sols if a % 2 == 1 and b % 2 == 0 and b >= 1 and a != 3}
                             | {(b, a) for a, b in sols if a % 2 == 1 and b % 2 == 0 and b >= 1 and a != 3})
    both_ok = all(f.positive_for_k_ge_1 for f in both)
    quartic_ok = _quartic_matches(norm1)
    verdict = "even-even" if both_ok and sym and not mixed_solutions else "undecided"
    return E4Order2Result(both, mixed, verdict, mixed_solutions, quartic_ok)


def _project_k_or_none(p):
    try:
        return _project_k(p)
    except ValueError:
        return None


def _quartic_matches(norm1: flint.fmpq_mpoly) -> bool:
    """The norm is k1^2 (k1+1)^2 R(k1, k2) up to a constant."""
    k1, k2, *_ = KCTX.gens()
    R = (k2 ** 2 * k1 ** 2 + k2 ** 2 * k1 - 27 * k2 ** 2 - 27 * k2 - 75 * k1 + k2 * k1
         - 75 * k1 ** 2 + k2 * k1 ** 2)
    target = k1 ** 2 * (k1 + 1) ** 2 * R
    q, r = divmod(norm1, target)
    return r.is_zero() and q.is_constant()


def e4_pair_order2(k1: int, k2: int) -> bool:
    """Direct check on one pair (both valuations of s); True when some valuation passes."""
    for sign in (1, -1):
        V = e4(k1, k2, sign)
        ok = True
        for dp in darboux_points(V):
            if dp.degenerate or dp.k is None:
                ok = False
                break
            dd = cartesian_derivatives(normalize_at(V, dp))
            if dp.k % 2 and dd.d222 != 0:
                ok = False
                break
        if ok:
            return True
    return False


# E2/E3 descendants, order 3 ---------------------------------------------------------------

def family_derivative_polys(which: str, k: flint.fmpq_poly):
    """(d122, t, d2222) with d222 = i t for E2 or E3 at index k (a polynomial)."""
    from .derivatives import monomial_derivatives
    kk = k * (k + 1)
    zero = flint.fmpq_poly([])
    if which == "E2":
        h = (1 - kk / 12, zero, kk / 4, -kk / 6)
    elif which == "E3":
        h = (1 - kk / 4, kk / 2, -kk / 4, zero)
    else:
        raise ValueError("E2 or E3")
    tab = [monomial_derivatives(m) for m in range(4)]
    d122 = sum((h[m] * _fq(tab[m][0]) for m in range(4)), zero)
    t = sum((h[m] * _fq(tab[m][1].im if tab[m][1] != 0 else 0) for m in range(4)), zero)
    d2222 = sum((h[m] * _fq(tab[m][2]) for m in range(4)), zero)
    return d122, t, d2222


def family_condition_coeffs(which: int) -> Tuple[flint.fmpq_poly, flint.fmpq_poly, flint.fmpq_poly]:
    """(coefficient of f1(2k), of f2(2k), of f3(2k)) as polynomials in k."""
    if which not in (1, 2):
        raise ValueError("family is 1 or 2")
    d122, t, d2222 = family_derivative_polys("E2" if which == 1 else "E3", flint.fmpq_poly([0, 2]))
    return d122 * d122, -(t * t), d2222


def displayed_family_coeffs(which: int):
    k = flint.fmpq_poly([0, 1])
    c1 = 9 * (k + 1) ** 2 * (2 * k - 1) ** 2
    if which == 1:
        return c1, -25 * k ** 2 * (2 * k + 1) ** 2, -(66 * k ** 2 + 33 * k - 9)
    return c1, -9 * k ** 2 * (2 * k + 1) ** 2, -(42 * k ** 2 + 21 * k - 9)


@dataclass
class TailCertificate:
    n0: int
    amplification: Fraction
    rel_err: Fraction
    sign: int

    def to_json(self) -> dict:
        return {"n0": self.n0, "amplification": format_rational(self.amplification),
                "rel_err": format_rational(self.rel_err), "sign": self.sign}


@dataclass
class E23Result:
    family: int
    exact_range: Tuple[int, int]
    exact_zeros: List[int]
    tail: Optional[TailCertificate]
    survivors: List[int] = field(default_factory=list)
    bounded_only: bool = False

    def to_json(self) -> dict:
        return {"family": self.family, "exact_range": list(self.exact_range),
                "exact_zeros": self.exact_zeros,
                "tail": None if self.tail is None else self.tail.to_json(),
                "survivors": self.survivors,
                "status": "bounded-scan only, no certified tail" if self.bounded_only else "complete"}


def _amplified_sign(terms: Sequence[RatFun], n0: int, rel: Fraction, degree: int = 1) -> TailCertificate:
    """Certify that sum T_i (1 + eta_i), |eta_i| <= (1+rel)^degree - 1, keeps a fixed sign."""
    amp = amplification(terms, n0)
    S = sum(terms, RatFun.const(0))
    v = sign_certify_univariate(S, n0)
    if not v.ok:
        raise CertificationFailure(f"sum not sign definite: {v.reason}", n0, v.witness)
    slack = (1 + rel) ** degree - 1
    if amp.bound * slack >= 1:
        raise CertificationFailure(
            f"amplification {float(amp.bound):.4g} too large for relative error {float(rel):.2g}", n0)
    return TailCertificate(n0, amp.bound, rel, v.sign)


def e23_order3_pipeline(which: int, limit: int = 100,
                        approx: Optional[Dict[str, CertifiedApprox]] = None) -> E23Result:
    cs = family_condition_coeffs(which)
    zeros = []
    for k in range(1, limit):
        f1, f2, f3 = f_values(2 * k)
        v = sum((_fr(c(k)) * f for c, f in zip(cs, (f1, f2, f3))), Fraction(0))
        if v == 0:
            zeros.append(k)
    approx = approx if approx is not None else None
    if approx is None:
        try:
            approx = default_approximants()
        except CertificationFailure:
            approx = None
    n0 = max(a.n0 for a in approx.values()) if approx else None
    if approx is None or limit < n0:
        return E23Result(which, (1, limit - 1), zeros, None, zeros, bounded_only=True)
    rel = max(a.rel_err for a in approx.values())
    terms = [RatFun(c) * approx[w].ratfun() for c, w in zip(cs, ("f1", "f2", "f3"))]
    tail = _amplified_sign(terms, limit, rel)
    return E23Result(which, (1, limit - 1), zeros, tail, zeros)


# E4, order 3 -------------------------------------------------------------------------------

@dataclass
class E4Instance:
    k1: int
    k2: int
    lambda1: Fraction
    lambda2: Fraction
    d: Fraction
    C: Dict[int, Dict[int, object]]       # sign -> {index: obstruction}
    Q_value_12: Fraction
    Q_value_21: Fraction

    @property
    def field(self) -> str:
        from ..algebra.scalars import rational_sqrt
        return "Q(i)" if rational_sqrt(self.d) is not None else f"Q(i)(sqrt({format_rational(self.d)}))"

    def passes(self) -> List[int]:
        """Valuations (+1 / -1 for s) whose two conditions both vanish."""
        return [s for s, c in self.C.items() if all(v == 0 for v in c.values())]

    def to_json(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "lambda1": format_rational(self.lambda1),
                "lambda2": format_rational(self.lambda2), "d": format_rational(self.d),
                "field": self.field,
                "conditions": {str(s): {str(k): scalar_to_json(v) for k, v in sorted(c.items())}
                               for s, c in sorted(self.C.items())},
                "Q_value_12": format_rational(self.Q_value_12),
                "Q_value_21": format_rational(self.Q_value_21),
                "passing_valuations": self.passes()}


def e4_instance(k1: int, k2: int) -> E4Instance:
    l1, l2 = shifted_lambda(k1), shifted_lambda(k2)
    C: Dict[int, Dict[int, object]] = {}
    for sign in (1, -1):
        V = e4(k1, k2, sign)
        pts = [dp for dp in darboux_points(V) if not dp.degenerate]
        vals: Dict[int, object] = {}
        for dp in pts:
            dd = cartesian_derivatives(normalize_at(V, dp))
            vals[dp.k] = order3_value(dd, dp.k, *f_values(dp.k))
        C[sign] = vals
    def q(idx):
        a, b = C[1].get(idx), C[-1].get(idx)
        return simplify(a * b)
    return E4Instance(k1, k2, l1, l2, e4_discriminant(l1, l2), C, q(k1), q(k2))


@lru_cache(maxsize=None)
def q_condition() -> flint.fmpq_mpoly:
    """Numerator of C * C(s -> -s) at the point of index k2, in l1, l2, F1, F2, F3."""
    return e4_symbolic()[1].Q().num


def q_symmetry_holds() -> bool:
    c1, c2 = e4_symbolic()
    g = CTX.gens()
    sw = lambda p: p.compose(g[1], g[0], g[2], g[3], g[4])
    Q1, Q2 = c1.Q(), c2.Q()
    return sw(Q1.num) * Q2.den == Q2.num * sw(Q1.den)


def _u_coefficients(P: flint.fmpq_mpoly) -> List[flint.fmpq_mpoly]:
    """P as a polynomial in u = (k1 + 1/2)^2 = 2 l1 + 1/4; coefficients free of l1."""
    g = CTX.gens()
    Pu = P.compose(g[0] / 2 - flint.fmpq(1, 8), g[1], g[2], g[3], g[4])
    buckets: Dict[int, dict] = {}
    for m, c in zip(Pu.monoms(), Pu.coeffs()):
        mm = (0,) + tuple(m[1:])
        buckets.setdefault(m[0], {})[mm] = c
    return [CTX.from_dict(buckets.get(j, {})) for j in range(max(buckets) + 1)]


def discriminant_structure() -> Dict[str, object]:
    """disc_u of the k2-point condition = const * w^2 * (square) with the displayed w^2."""
    A = _u_coefficients(q_condition())
    if len(A) != 3:
        return {"degree_in_u": len(A) - 1, "matches": False}
    disc = A[1] ** 2 - 4 * A[2] * A[0]
    w2 = displayed_w2()
    q, r = divmod(disc, w2)
    if not r.is_zero():
        return {"degree_in_u": 2, "matches": False}
    root = q.sqrt() if _has_sqrt(q) else None
    if root is None:
        c, facs = q.factor()
        ok = all(m % 2 == 0 for _, m in facs)
    else:
        ok = True
    return {"degree_in_u": 2, "matches": ok}


def _has_sqrt(p) -> bool:
    try:
        p.sqrt()
        return True
    except Exception:
        return False


def _l_of_n() -> flint.fmpq_poly:
    """l2 at k2 = 2n."""
    return flint.fmpq_poly([0, 1, 2])


def _terms_in_n(P: flint.fmpq_mpoly, approx: Dict[str, CertifiedApprox], n0: int) -> Tuple[List[RatFun], int]:
    """Split P(l2, F1, F2, F3) at l2 = 2n^2 + n, F_i = approximant into sign-definite terms."""
    ln = _l_of_n()
    Fs = [approx[w].ratfun() for w in ("f1", "f2", "f3")]
    groups: Dict[Tuple[int, int, int], Dict[int, Fraction]] = {}
    deg = 0
    for m, c in zip(P.monoms(), P.coeffs()):
        if m[0]:
            raise ValueError("coefficient still depends on l1")
        alpha = tuple(int(a) for a in m[2:])
        deg = max(deg, int(sum(int(a) for a in alpha)))
        groups.setdefault(alpha, {})[m[1]] = _fr(c)
    terms = []
    for alpha in sorted(groups):
        poly = flint.fmpq_poly([])
        for e, c in groups[alpha].items():
            poly = poly + _fq(c) * ln ** e
        F = RatFun.const(1)
        for Fi, a in zip(Fs, alpha):
            if a:
                F = F * Fi ** a
        T = RatFun(poly) * F
        if sign_certify_univariate(T, n0).ok:
            terms.append(T)
            continue
        # split the polynomial factor into monomials in n (each sign definite)
        for j in range(poly.degree() + 1):
            if poly[j] != 0:
                terms.append(RatFun(flint.fmpq_poly([0] * j + [poly[j]])) * F)
    return terms, deg


@dataclass
class E4TailResult:
    n0: int
    coefficient_certificates: List[TailCertificate]
    w2_certificate: Optional[TailCertificate]
    same_sign: bool

    def to_json(self) -> dict:
        return {"k2_from": 2 * self.n0,
                "u_coefficients": [c.to_json() for c in self.coefficient_certificates],
                "w2": None if self.w2_certificate is None else self.w2_certificate.to_json(),
                "all_coefficients_same_sign": self.same_sign}


def e4_tail(approx: Dict[str, CertifiedApprox], n0: int) -> E4TailResult:
    """For even k2 = 2n >= 2 n0: the k2-point condition, a quadratic in
    u = (k1 + 1/2)^2 whose three coefficients share one strict sign, has no
    root u >= 0, so no real k1 >= -1/2 satisfies it."""
    rel = max(a.rel_err for a in approx.values())
    certs = []
    for A in _u_coefficients(q_condition()):
        terms, deg = _terms_in_n(A, approx, n0)
        certs.append(_amplified_sign(terms, n0, rel, max(deg, 1)))
    try:
        wterms, wdeg = _terms_in_n(displayed_w2(), approx, n0)
        wcert = _amplified_sign(wterms, n0, rel, max(wdeg, 1))
    except CertificationFailure:
        wcert = None
    same = len({c.sign for c in certs}) == 1
    return E4TailResult(n0, certs, wcert, same)


@dataclass
class E4Order3Result:
    limit: int
    candidates: List[Tuple[int, int]]
    survivors: List[Tuple[int, int]]
    instances: List[E4Instance]
    tail: Optional[E4TailResult]
    symmetric: bool
    bounded_only: bool

    def to_json(self) -> dict:
        return {"limit": self.limit, "candidates": [list(p) for p in self.candidates],
                "survivors": [list(p) for p in self.survivors],
                "instances": [i.to_json() for i in self.instances],
                "tail": None if self.tail is None else self.tail.to_json(),
                "conditions_symmetric": self.symmetric,
                "status": "bounded-scan only, no certified tail" if self.bounded_only else "complete"}


def e4_scan(limit: int) -> List[Tuple[int, int]]:
    """Even pairs 2 <= k1, k2 < limit where some point's rationalised condition vanishes."""
    P = q_condition()
    evens = list(range(2, limit, 2))
    lam = {k: _fq(shifted_lambda(k)) for k in evens}
    hits = set()
    for k2 in evens:
        f1, f2, f3 = f_values(k2)
        q = P.subs({"l2": lam[k2], "F1": _fq(f1), "F2": _fq(f2), "F3": _fq(f3)})
        qu = _univariate_l1(q)
        for k1 in evens:
            if qu(lam[k1]) == 0:
                hits.add((k1, k2))
                hits.add((k2, k1))  # the other point by symmetry
    return sorted(hits)


def _univariate_l1(q: flint.fmpq_mpoly) -> flint.fmpq_poly:
    d = {}
    for m, c in zip(q.monoms(), q.coeffs()):
        d[m[0]] = c
    top = max(d, default=-1)
    return flint.fmpq_poly([d.get(i, 0) for i in range(top + 1)])


def e4_order3_pipeline(limit: int = 200, approx: Optional[Dict[str, CertifiedApprox]] = None,
                       with_tail: bool = True) -> E4Order3Result:
    cands = e4_scan(limit)
    insts = [e4_instance(a, b) for a, b in cands]
    survivors = [(i.k1, i.k2) for i in insts if i.passes()]
    tail = None
    bounded = True
    if with_tail:
        if approx is None:
            approx = default_approximants()
        n0 = max(a.n0 for a in approx.values())
        if limit >= 2 * n0:
            tail = e4_tail(approx, limit // 2)
            bounded = not tail.same_sign
    return E4Order3Result(limit, cands, survivors, insts, tail, q_symmetry_holds(), bounded)
