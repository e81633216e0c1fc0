"""First-order variational solutions P_n, Q_n as exact objects.

P_n is the polynomial (t^2-1)^-1 d^(n-1)/dt^(n-1) (t^2-1)^n.  Q_n is the
second solution of

    (t^2 - 1) y'' + 4 t y' - (n - 1)(n + 2) y = 0

normalised by P_n Q_n' - P_n' Q_n = (t^2 - 1)^-2 and decay at infinity.  It
is built as a Laurent series at t = infinity from closed forms for n = 1, 2
and the three-term recurrence for Q_n / eps_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

import flint

from .algebra.series import SeriesInf, SeriesPrecisionError, series_arctanh_inv_t
from .algebra.unipoly import UniPoly

_T2M1 = flint.fmpq_poly([-1, 0, 1])


@dataclass(frozen=True)
class LegendreP:
    n: int
    flint_poly: Optional[flint.fmpq_poly]  # None for n = 0

    @property
    def structural(self) -> bool:
        """n = 0 is the rational function t/(t^2 - 1), not a polynomial."""
        return self.n == 0

    @property
    def poly(self) -> UniPoly:
        if self.flint_poly is None:
            raise ValueError("P_0 = t/(t^2-1) is not a polynomial")
        return UniPoly.from_flint(self.flint_poly, "t")

    def series(self, T: int | None = None) -> SeriesInf:
        if self.n == 0:
            if T is None:
                raise ValueError("P_0 needs a truncation order")
            return SeriesInf.from_terms({-(2 * k + 1): 1 for k in range((T + 1) // 2)}, T)
        return SeriesInf.from_poly(self.flint_poly)


@lru_cache(maxsize=None)
def _rodrigues(n: int) -> flint.fmpq_poly:
    p = _T2M1 ** n
    for _ in range(n - 1):
        p = p.derivative()
    q, r = divmod(p, _T2M1)
    if r != 0:
        raise ArithmeticError(f"Rodrigues quotient for n={n} is not exact")
    return q


def p_poly(n: int) -> LegendreP:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return LegendreP(0, None)
    return LegendreP(n, _rodrigues(n))


def epsilon(n: int) -> Fraction:
    """eps_n = n(n+1) / (4^n (n!)^2)."""
    if n < 1:
        raise ValueError("eps_n is defined for n >= 1")
    return Fraction(n * (n + 1), 4 ** n * factorial(n) ** 2)


@dataclass(frozen=True)
class LegendreQSeries:
    n: int
    eps_n: Optional[Fraction]
    series: SeriesInf
    method: str

    @property
    def T(self) -> int:
        return self.series.T


def _inv_t2m1(T: int, shift: int = 0) -> SeriesInf:
    """t^shift / (t^2 - 1) known to order T."""
    terms = {}
    e = shift - 2
    while e >= -T:
        terms[e] = 1
        e -= 2
    return SeriesInf.from_terms(terms, T)


def q1_closed(T: int) -> SeriesInf:
    """(1/2) arctanh(1/t) - t / (2 (t^2 - 1))."""
    return series_arctanh_inv_t(T).scale(Fraction(1, 2)) - _inv_t2m1(T, 1).scale(Fraction(1, 2))


def q2_closed(T: int) -> SeriesInf:
    """(3t/8) arctanh(1/t) - 1/4 - t^2 / (8 (t^2 - 1))."""
    a = series_arctanh_inv_t(T + 1).mul_t_power(1).scale(Fraction(3, 8))
    return a - Fraction(1, 4) - _inv_t2m1(T, 2).scale(Fraction(1, 8))


def _q_recurrence(n: int, T: int) -> SeriesInf:
    T0 = T + n
    qa = q1_closed(T0).scale(1 / epsilon(1))
    qb = q2_closed(T0).scale(1 / epsilon(2))
    if n == 1:
        return qa.scale(epsilon(1)).truncate(T)
    for m in range(1, n - 1):
        # 4m(m+1)(m+2) Qt_m - 2t(m+2)(2m+3) Qt_{m+1} + (m+3) Qt_{m+2} = 0
        nxt = (qb.mul_t_power(1).scale(2 * (m + 2) * (2 * m + 3))
               - qa.scale(4 * m * (m + 1) * (m + 2))).scale(Fraction(1, m + 3))
        qa, qb = qb, nxt
    return qb.scale(epsilon(n)).truncate(T)


def _q_ode(n: int, T: int) -> SeriesInf:
    """Coefficient recurrence of the ODE: Q_n = sum a_m t^-m, m = n+2, n+4, ..."""
    lead = _rodrigues(n)[n - 1]
    a = flint.fmpq(-1) / ((2 * n + 1) * lead)
    coeffs = [flint.fmpq(0)] * (T + 1)
    m = n + 2
    while m <= T:
        coeffs[m] = a
        a = a * flint.fmpq(m * (m + 1), (m - n) * (m + n + 1))
        m += 2
    return SeriesInf.from_u_series(0, flint.fmpq_poly(coeffs), T)


def q_series(n: int, T: int, method: str = "recurrence") -> LegendreQSeries:
    """Series of Q_n at infinity known to order T.

    ``method`` is "recurrence" (closed forms + three-term recurrence) or
    "ode" (coefficient recurrence of the differential equation).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return LegendreQSeries(0, None, _inv_t2m1(T), "structural")
    if T < n + 2:
        raise SeriesPrecisionError(f"T={T} cannot hold the leading term t^-{n + 2}")
    if method == "recurrence":
        s = _cached_recurrence(n, T)
    elif method == "ode":
        s = _q_ode(n, T)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LegendreQSeries(n, epsilon(n), s, method)


@lru_cache(maxsize=256)
def _cached_recurrence(n: int, T: int) -> SeriesInf:
    return _q_recurrence(n, T)


def ode_residual(y: SeriesInf, n: int) -> SeriesInf:
    """(t^2-1) y'' + 4t y' - (n-1)(n+2) y."""
    t2m1 = SeriesInf.from_poly(_T2M1)
    d1 = y.derivative()
    d2 = d1.derivative()
    return t2m1 * d2 + d1.mul_t_power(1).scale(4) - y.scale((n - 1) * (n + 2))


def check_ode(n: int, T: int, method: str = "recurrence") -> bool:
    """The series of Q_n satisfies the ODE coefficientwise to order T - 4."""
    r = ode_residual(q_series(n, T, method).series, n)
    return all(r.coefficient(e).is_zero() for e in range(r.top, -(T - 4) - 1, -1))


def _p_series(n: int, T: int) -> SeriesInf:
    return p_poly(n).series(T)


def verify_wronskian(n: int, T: int | None = None) -> bool:
    """P_n Q_n' - P_n' Q_n = (t^2-1)^-2 on the known range."""
    if T is None:
        T = 2 * n + 16
    P = _p_series(n, T + 2)
    Q = q_series(n, T + 2 * n + 4).series
    W = P * Q.derivative() - P.derivative() * Q
    lo = -W.T
    target = {}
    k = 0
    while -4 - 2 * k >= lo:
        target[-4 - 2 * k] = k + 1
        k += 1
    for e in range(max(W.top, 0), lo - 1, -1):
        want = target.get(e, 0)
        if W.coefficient(e) != want:
            return False
    return True
