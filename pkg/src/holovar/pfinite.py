"""Linear recurrences with polynomial coefficients over Q.

A recurrence of order r is  sum_{i=0}^{r} c_i(n) y(n + i) = 0  with c_i in
Q[n].  ``offset`` is the first index of ``initials``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

import flint

from .algebra.scalars import format_rational, parse_rational
from .algebra.unipoly import UniPoly

_GUESS_PRIME = 2 ** 61 - 1


class SingularIndex(ArithmeticError):
    """The leading coefficient vanishes at an index needed for evaluation."""


class InsufficientData(ValueError):
    """Too few terms for the requested guessing ansatz."""


class GuessFailure(RuntimeError):
    """No recurrence within the bounds annihilates the data."""


def _poly_ints(p: UniPoly, n: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class PFiniteRec:
    order: int
    coeffs: tuple  # r + 1 UniPoly in n, c_0 .. c_r
    offset: int
    initials: tuple = field(default=())

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need order + 1 coefficient polynomials")
        if self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient polynomial is zero")

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.coeffs)

    def coeff_at(self, i: int, n: int) -> Fraction:
        return _poly_ints(self.coeffs[i], n)

    def residual(self, values: Callable[[int], Fraction], n: int) -> Fraction:
        return sum((self.coeff_at(i, n) * values(n + i) for i in range(self.order + 1)),
                   Fraction(0))

    def with_initials(self, initials: Sequence, offset: Optional[int] = None) -> "PFiniteRec":
        return PFiniteRec(self.order, self.coeffs,
                          self.offset if offset is None else offset,
                          tuple(Fraction(x) for x in initials))

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[format_rational(c) for c in p.coeffs] for p in self.coeffs],
            "offset": self.offset,
            "initials": [format_rational(x) for x in self.initials],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PFiniteRec":
        coeffs = tuple(UniPoly([parse_rational(c) for c in p], "n") for p in obj["coeffs"])
        return cls(int(obj["order"]), coeffs, int(obj["offset"]),
                   tuple(parse_rational(x) for x in obj.get("initials", [])))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            parts.append(f"({c}) y(n+{i})")
        return " + ".join(parts) + " = 0"


def rec_eval(rec: PFiniteRec, n_max: int) -> Dict[int, Fraction]:
    """Values y(offset) .. y(n_max) by forward substitution."""
    if len(rec.initials) < rec.order:
        raise ValueError("not enough initial values")
    vals: Dict[int, Fraction] = {}
    for k, v in enumerate(rec.initials):
        if rec.offset + k <= n_max:
            vals[rec.offset + k] = Fraction(v)
    r = rec.order
    n = rec.offset + len(rec.initials) - r
    while n + r <= n_max:
        lead = rec.coeff_at(r, n)
        if lead == 0:
            raise SingularIndex(f"leading coefficient vanishes at n={n}")
        s = sum((rec.coeff_at(i, n) * vals[n + i] for i in range(r)), Fraction(0))
        vals[n + r] = -s / lead
        n += 1
    return vals


def rec_verify(rec: PFiniteRec, oracle: Union[Callable[[int], Fraction], Dict[int, Fraction]],
               indices: Iterable[int]) -> bool:
    """True iff the recurrence annihilates the oracle values on all windows
    n, n+1, ..., n+r fully contained in ``indices``."""
    idx = sorted(set(indices))
    if isinstance(oracle, dict):
        vals = oracle
    else:
        vals = {k: Fraction(oracle(k)) for k in idx}
    got = set(idx)
    for n in idx:
        if all(n + i in got for i in range(rec.order + 1)):
            if rec.residual(vals.__getitem__, n) != 0:
                return False
    return True


# guessing ----------------------------------------------------------------------

def required_terms(max_order: int, max_degree: int, margin: int = 10) -> int:
    return (max_order + 1) * (max_degree + 2) + max_order + margin


def _row(vals: Sequence[Fraction], k: int, n: int, r: int, d: int) -> List[Fraction]:
    row = []
    for i in range(r + 1):
        v = vals[k + i]
        p = Fraction(1)
        for _ in range(d + 1):
            row.append(p * v)
            p *= n
    return row


def _row_mod(vals_mod: Sequence[int], k: int, n: int, r: int, d: int, p: int) -> List[int]:
    row = []
    for i in range(r + 1):
        v = vals_mod[k + i]
        w = 1
        for _ in range(d + 1):
            row.append(v * w % p)
            w = w * n % p
    return row


def _nullity_mod_p(vals_mod, offset, r, d, neq, p) -> int:
    rows = [_row_mod(vals_mod, k, offset + k, r, d, p) for k in range(neq)]
    M = flint.nmod_mat(rows, p)
    return (r + 1) * (d + 1) - M.rank()


def _exact_kernel(vals, offset, r, d, neq) -> List[List[int]]:
    rows = []
    for k in range(neq):
        row = _row(vals, k, offset + k, r, d)
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
    X, nullity = flint.fmpz_mat(rows).nullspace()
    out = []
    for c in range(int(nullity)):
        out.append([int(X[i, c]) for i in range((r + 1) * (d + 1))])
    return out


def _normalize(vec: List[int]) -> List[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    vec = [v // g for v in vec]
    lead = next(v for v in reversed(vec) if v != 0)
    return vec if lead > 0 else [-v for v in vec]


def _vec_to_rec(vec: List[int], r: int, d: int, offset: int, vals) -> PFiniteRec:
    coeffs = []
    for i in range(r + 1):
        coeffs.append(UniPoly([Fraction(vec[i * (d + 1) + j]) for j in range(d + 1)], "n"))
    return PFiniteRec(r, tuple(coeffs), offset, tuple(vals[:r]))


def _annihilates(rec: PFiniteRec, vals: Sequence[Fraction], offset: int) -> bool:
    for k in range(len(vals) - rec.order):
        n = offset + k
        s = Fraction(0)
        for i in range(rec.order + 1):
            s += rec.coeff_at(i, n) * vals[k + i]
        if s != 0:
            return False
    return True


def _reduce_mod(x: Fraction, p: int) -> Optional[int]:
    if x.denominator % p == 0:
        return None
    return x.numerator % p * pow(x.denominator, -1, p) % p


def rec_guess(values: Sequence, offset: int, max_order: int, max_degree: int,
              margin: int = 10, min_order: int = 1) -> Optional[PFiniteRec]:
    """Minimal (order, then degree) recurrence annihilating all ``values``.

    ``values[k]`` is y(offset + k).  For each candidate the kernel is computed
    on a fitting window of (r+1)(d+1) + margin equations; the candidate is
    then checked on every provided value.  Returns None if nothing fits.
    """
    vals = [Fraction(v) for v in values]
    need = required_terms(max_order, max_degree, margin)
    if len(vals) < need:
        raise InsufficientData(f"need at least {need} terms for order <= {max_order}, "
                               f"degree <= {max_degree}; got {len(vals)}")
    p = _GUESS_PRIME
    vals_mod = [_reduce_mod(v, p) for v in vals]
    use_mod = all(v is not None for v in vals_mod)
    for r in range(min_order, max_order + 1):
        def nullity(d):
            neq = min((r + 1) * (d + 1) + margin, len(vals) - r)
            if use_mod:
                return _nullity_mod_p(vals_mod, offset, r, d, neq, p)
            return len(_exact_kernel(vals, offset, r, d, neq))
        if nullity(max_degree) == 0:
            continue
        lo, hi = 0, max_degree  # smallest d with positive (mod p) nullity
        while lo < hi:
            mid = (lo + hi) // 2
            if nullity(mid) > 0:
                hi = mid
            else:
                lo = mid + 1
        for d in range(lo, max_degree + 1):
            neq = min((r + 1) * (d + 1) + margin, len(vals) - r)
            ker = _exact_kernel(vals, offset, r, d, neq)
            cands = sorted(_normalize(v) for v in ker)
            for vec in cands:
                rec = _vec_to_rec(vec, r, d, offset, vals)
                if rec.coeffs[-1].is_zero():
                    continue
                if _annihilates(rec, vals, offset):
                    return rec
    return None


def equivalent_on(rec_a: PFiniteRec, rec_b: PFiniteRec, values: Dict[int, Fraction]) -> bool:
    """Both recurrences annihilate the given terms (action-based equivalence)."""
    return rec_verify(rec_a, values, values.keys()) and rec_verify(rec_b, values, values.keys())


def rec_even_subsequence(source, max_order: int, max_degree: int, n_terms: int,
                         holdout: int = 40, m0: int = 1) -> PFiniteRec:
    """Recurrence for g(m) = f(2m), m >= m0.

    ``source`` is a PFiniteRec (evaluated forward) or a callable / dict giving
    f at even indices.  ``n_terms`` values are used for guessing and ``holdout``
    further ones for verification.
    """
    total = n_terms + holdout
    if isinstance(source, PFiniteRec):
        f = rec_eval(source, 2 * (m0 + total))
        get = f.__getitem__
    elif isinstance(source, dict):
        get = source.__getitem__
    else:
        get = source
    g = [Fraction(get(2 * m)) for m in range(m0, m0 + total)]
    rec = rec_guess(g[:n_terms], m0, max_order, max_degree)
    if rec is None:
        raise GuessFailure("no recurrence for the even subsequence within the bounds")
    if not _annihilates(rec, g, m0):
        raise GuessFailure("guessed even-subsequence recurrence fails on held-out terms")
    return rec


# hypergeometric terms -----------------------------------------------------------

@dataclass(frozen=True)
class HypergeometricVerdict:
    hypergeometric: bool
    ratio: Optional[tuple] = None  # (num UniPoly, den UniPoly) with y(m+1)/y(m) = num/den
    witness: str = ""


def hypergeometric_check(values: Sequence, offset: int = 0,
                         max_degree: Optional[int] = None) -> HypergeometricVerdict:
    """Is y(m+1)/y(m) a fixed rational function of m on all given terms?"""
    vals = [Fraction(v) for v in values]
    if len(vals) < 10:
        raise InsufficientData("hypergeometric check needs at least 10 values")
    if any(v == 0 for v in vals):
        k = next(i for i, v in enumerate(vals) if v == 0)
        raise ZeroDivisionError(f"zero value at index {offset + k}")
    margin = max(2, min(10, len(vals) // 3))
    if max_degree is None:
        max_degree = max(0, (len(vals) - 1 - margin) // 2 - 2)
    try:
        rec = rec_guess(vals, offset, 1, max_degree, margin=margin)
    except InsufficientData:
        rec = None
    if rec is None:
        return HypergeometricVerdict(
            False, None,
            f"no first-order recurrence of degree <= {max_degree} fits {len(vals)} terms")
    num = -rec.coeffs[0]
    den = rec.coeffs[1]
    return HypergeometricVerdict(True, (num, den), "")


def ratio_matches(values: Sequence, offset: int, ratio: Callable[[int], Fraction]):
    """Compare y(m+1)/y(m) with a given ratio; returns (all_match, first_mismatch_m)."""
    vals = [Fraction(v) for v in values]
    for k in range(len(vals) - 1):
        m = offset + k
        if vals[k + 1] != vals[k] * ratio(m):
            return False, m
    return True, None


def term_from_ratio(first: Fraction, ratio: Callable[[int], Fraction], offset: int, count: int):
    out = [Fraction(first)]
    for k in range(count - 1):
        out.append(out[-1] * ratio(offset + k))
    return out


def gamma_term_ratio(m) -> Fraction:
    """T(m+1)/T(m) for the Gamma quotient
    Gamma(m+1) Gamma(m+5/6)^2 Gamma(m+1/6)^2 Gamma(m)^3 /
    (Gamma(m+2/3)^2 Gamma(m+3/2)^3 Gamma(m+1/2) Gamma(m+4/3)^2)."""
    n = Fraction(m)
    num = (n + 1) * (n + Fraction(5, 6)) ** 2 * (n + Fraction(1, 6)) ** 2 * n ** 3
    den = (n + Fraction(2, 3)) ** 2 * (n + Fraction(3, 2)) ** 3 * (n + Fraction(1, 2)) * (n + Fraction(4, 3)) ** 2
    return num / den


# fixtures ---------------------------------------------------------------------------

def load_fixture(name: str) -> PFiniteRec:
    """Shipped recurrences: 'f3' and 'f1'."""
    text = resources.files("holovar.data").joinpath(f"rec_{name}.json").read_text()
    return PFiniteRec.from_json(json.loads(text))


def perturbed(rec: PFiniteRec, i: int = 0, j: int = 0, delta=1, seed: Optional[int] = None) -> PFiniteRec:
    """Copy with one coefficient changed (mutation tests)."""
    if seed is not None:
        rnd = random.Random(seed)
        i = rnd.randrange(rec.order + 1)
        j = rnd.randrange(rec.coeffs[i].degree() + 1)
    cs = list(rec.coeffs)
    c = list(cs[i].coeffs) + [Fraction(0)] * (j + 1 - len(cs[i].coeffs))
    c[j] += delta
    cs[i] = UniPoly(c, "n")
    return PFiniteRec(rec.order, tuple(cs), rec.offset, rec.initials)
