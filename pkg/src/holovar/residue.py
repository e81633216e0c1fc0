"""Exact values of the third-order obstruction sequences f1, f2, f3.

Each value is the alpha^3 coefficient of a residue at infinity of an
expression in Q_n + eps_n * alpha * P_n, scaled by eps_n^-2:

    f3(n) = 1/6 eps^-2 <a^3> Res (t^2-1)^3 (Q_n + eps a P_n)^4
    f2(n) = 2 eps^-2 <a^3> Res (t^2-1)^2 (Q_n + eps a P_n)^3
                 * Int (t^2-1)^2 (Q_n + eps a P_n)^2 P_n
    f1(n) = 2 eps^-2 <a^3> Res (t^2-1)^2 (Q_n + eps a P_n)^2 (Q_2 + eps_2 a P_2)
                 * Int (t^2-1)^2 (Q_n + eps a P_n)^2 P_2

Two routes are provided.  ``generic`` multiplies full alpha-series built from
the recurrence construction of Q_n and checks stability under doubling of the
truncation order.  ``fast`` expands the alpha^3 coefficient by hand, uses the
ODE construction of Q_n and alpha-free products; its truncation order is the
smallest one for which every coefficient read is inside the tracked range.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

import flint

from .algebra.scalars import format_rational, parse_rational
from .algebra.series import (
    AlphaPoly,
    LogarithmicObstruction,
    SeriesInf,
    SeriesPrecisionError,
    residue_of_product,
    series_integrate,
)
from .legendre import epsilon, p_poly, q_series

WHICH = ("f1", "f2", "f3")
_T2M1 = flint.fmpq_poly([-1, 0, 1])
_W2 = SeriesInf.from_poly(_T2M1 ** 2)
_W3 = SeriesInf.from_poly(_T2M1 ** 3)


class TruncationInstability(RuntimeError):
    """Recomputing at twice the truncation order changed the value."""


@dataclass(frozen=True)
class FValue:
    which: str
    n: int
    value: Fraction


def default_order(n: int) -> int:
    return 8 * n + 64


def _min_index(which: str) -> int:
    return 1 if which == "f3" else 2


def _check_index(which: str, n: int):
    if which not in WHICH:
        raise ValueError(f"unknown sequence {which!r}")
    if n < _min_index(which):
        raise ValueError(f"{which} is defined for n >= {_min_index(which)}")


# generic route ---------------------------------------------------------------

def _qa(n: int, T: int) -> SeriesInf:
    """Q_n + eps_n * alpha * P_n as an alpha-series."""
    Q = q_series(n, T).series
    return Q + SeriesInf.from_poly(p_poly(n).flint_poly, alpha_power=1).scale(epsilon(n))


def _generic_alpha(which: str, n: int, T: int) -> AlphaPoly:
    QA = _qa(n, T)
    if which == "f3":
        return (_W3 * QA ** 4).residue() * (Fraction(1, 6) / epsilon(n) ** 2)
    inner_factor = SeriesInf.from_poly(p_poly(2 if which == "f1" else n).flint_poly)
    inner = series_integrate(_W2 * QA * QA * inner_factor)
    if which == "f1":
        outer = _W2 * QA * QA * _qa(2, T)
    else:
        outer = _W2 * QA * QA * QA
    return residue_of_product(outer, inner) * (2 / epsilon(n) ** 2)


def residue_alpha(which: str, n: int, T: Optional[int] = None) -> AlphaPoly:
    """The whole alpha-polynomial whose alpha^3 coefficient is f(n)."""
    _check_index(which, n)
    return _generic_alpha(which, n, T or default_order(n))


def _generic(which: str, n: int, T: Optional[int], doubling: bool) -> Fraction:
    T = T or default_order(n)
    v = _generic_alpha(which, n, T)[3]
    if doubling:
        w = _generic_alpha(which, n, 2 * T)[3]
        if v != w:
            raise TruncationInstability(f"{which}({n}) differs between T={T} and T={2 * T}")
    return v


def f3_oracle(n: int, T: Optional[int] = None, doubling: bool = True) -> Fraction:
    _check_index("f3", n)
    return _generic("f3", n, T, doubling)


def f1_oracle(n: int, T: Optional[int] = None, doubling: bool = True) -> Fraction:
    _check_index("f1", n)
    return _generic("f1", n, T, doubling)


def f2_oracle(n: int, T: Optional[int] = None, doubling: bool = True) -> Fraction:
    _check_index("f2", n)
    return _generic("f2", n, T, doubling)


ORACLES = {"f1": f1_oracle, "f2": f2_oracle, "f3": f3_oracle}


# fast route -------------------------------------------------------------------

def _fast_once(which: str, n: int, T: int) -> Fraction:
    e = flint.fmpq(epsilon(n).numerator, epsilon(n).denominator)
    Q = q_series(n, T, method="ode").series
    P = SeriesInf.from_poly(p_poly(n).flint_poly)
    if which == "f3":
        # <a^3> (Q + e a P)^4 = 4 e^3 P^3 Q
        r = residue_of_product(_W3 * P * P * P, Q)[0]
        return Fraction(2, 3) * epsilon(n) * Fraction(int(r.p), int(r.q)) if isinstance(r, flint.fmpq) else Fraction(2, 3) * epsilon(n) * r
    Q2 = Q * Q
    if which == "f2":
        WP = _W2 * P
        # outer alpha parts O1..O3 and inner parts I0..I2 (eps powers factored out)
        o1 = WP * Q2                      # 3 e   W Q^2 P
        o2 = WP * P * Q                   # 3 e^2 W Q P^2
        o3 = WP * P * P                   # e^3   W P^3
        i2 = series_integrate(WP * P * P)     # e^2 Int W P^3
        i1 = series_integrate(WP * P * Q)     # 2e Int W P^2 Q
        i0 = series_integrate(WP * Q2)        # Int W P Q^2
        r = (3 * residue_of_product(o1, i2)[0] + 6 * residue_of_product(o2, i1)[0]
             + residue_of_product(o3, i0)[0])
        return 2 * epsilon(n) * r
    # f1
    e2 = epsilon(2)
    en = epsilon(n)
    P2 = SeriesInf.from_poly(p_poly(2).flint_poly)
    Qb = q_series(2, T, method="ode").series
    WP2 = _W2 * P2
    i0 = series_integrate(WP2 * Q2)
    i1 = series_integrate(WP2 * Q * P).scale(2 * en)
    i2 = series_integrate(WP2 * P * P).scale(en * en)
    o1 = _W2 * (Q * P * Qb).scale(2 * en) + _W2 * (Q2 * P2).scale(e2)
    o2 = _W2 * (P * P * Qb).scale(en * en) + _W2 * (Q * P * P2).scale(2 * en * e2)
    o3 = (_W2 * P * P * P2).scale(en * en * e2)
    r = (residue_of_product(o1, i2)[0] + residue_of_product(o2, i1)[0]
         + residue_of_product(o3, i0)[0])
    return 2 * r / en ** 2


def fast_value(which: str, n: int, T: Optional[int] = None) -> Fraction:
    """f(n) by the expanded formulas; T grows until every read is in range."""
    _check_index(which, n)
    T = T or (3 * n + 12)
    while True:
        try:
            return _fast_once(which, n, T)
        except SeriesPrecisionError:
            T *= 2


def f_value(which: str, n: int, method: str = "fast") -> Fraction:
    if method == "fast":
        return fast_value(which, n)
    if method == "generic":
        return ORACLES[which](n)
    raise ValueError(f"unknown method {method!r}")


def _worker(args):
    which, n, method = args
    return which, n, f_value(which, n, method)


def f_table(which: str, ns: Iterable[int], method: str = "fast", jobs: int = 1) -> Dict[int, Fraction]:
    """Values for many indices; parallel over indices when jobs > 1."""
    tasks = [(which, n, method) for n in ns]
    if jobs <= 1 or len(tasks) < 2:
        return {n: v for _, n, v in map(_worker, tasks)}
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return {n: v for _, n, v in ex.map(_worker, tasks, chunksize=4)}


# n = 0 ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Order0Rule:
    """For eigenvalue index p = 0 the order-3 condition reduces to d222 = 0."""

    a2_residue: Fraction
    c_residue: Fraction
    requires: str = "d222 == 0"

    def holds(self, d222) -> bool:
        return d222 == 0


def order0_condition(T: int = 40) -> Order0Rule:
    """Residues of the a^2 and c terms at n = 0 (no alpha, no eps scaling).

    With Q_0 = 1/(t^2-1) both vanish; the remaining b^2 term carries a
    dilogarithm, so the condition is just d222 = 0.
    """
    Q0 = q_series(0, T).series
    Q2 = q_series(2, T).series
    P2 = SeriesInf.from_poly(p_poly(2).flint_poly)
    c_res = (_W3 * Q0 ** 4).residue()[0] * Fraction(1, 6)
    inner = series_integrate(_W2 * P2 * Q0 * Q0)
    a2_res = 2 * residue_of_product(_W2 * Q0 * Q0 * Q2, inner)[0]
    return Order0Rule(a2_res, c_res)


# cache -----------------------------------------------------------------------

class CacheMismatch(RuntimeError):
    """A regenerated value differs from the cached one."""


class FValueCache:
    """CSV store of exact values: columns which, n, value ("p/q")."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.values: Dict[tuple, Fraction] = {}
        self.hits = 0
        self.dirty = False
        if path and os.path.exists(path):
            with open(path, newline="") as fh:
                for row in csv.DictReader(fh):
                    self.values[(row["which"], int(row["n"]))] = parse_rational(row["value"])

    def get(self, which: str, n: int) -> Optional[Fraction]:
        v = self.values.get((which, n))
        if v is not None:
            self.hits += 1
        return v

    def put(self, which: str, n: int, value: Fraction):
        old = self.values.get((which, n))
        if old is not None and old != value:
            raise CacheMismatch(f"{which}({n}): cached {old} but computed {value}")
        if old is None:
            self.values[(which, n)] = value
            self.dirty = True

    def save(self):
        if not self.path or not self.dirty:
            return
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        tmp = self.path + ".tmp"
        with open(tmp, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["which", "n", "value"])
            for (which, n) in sorted(self.values):
                w.writerow([which, n, format_rational(self.values[(which, n)])])
        os.replace(tmp, self.path)
        self.dirty = False

    def table(self, which: str, ns: List[int], method: str = "fast", jobs: int = 1) -> Dict[int, Fraction]:
        missing = [n for n in ns if (which, n) not in self.values]
        for n in ns:
            if (which, n) in self.values:
                self.hits += 1
        if missing:
            for n, v in f_table(which, missing, method, jobs).items():
                self.put(which, n, v)
        return {n: self.values[(which, n)] for n in ns}
