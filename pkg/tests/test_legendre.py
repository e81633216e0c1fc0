from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from holovar.algebra.series import SeriesPrecisionError
from holovar.legendre import check_ode, epsilon, p_poly, q_series, verify_wronskian

t = sympy.Symbol("t")


def _rodrigues_sympy(n):
    expr = sympy.cancel(sympy.diff((t ** 2 - 1) ** n, t, n - 1) / (t ** 2 - 1))
    return [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(expr, t).all_coeffs())]


def _coeffs(n):
    return [Fraction(int(c.p), int(c.q)) for c in p_poly(n).flint_poly.coeffs()]


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
def test_p_matches_symbolic_rodrigues(n):
    assert _coeffs(n) == _rodrigues_sympy(n)


def test_small_p():
    assert _coeffs(1) == [1]
    assert _coeffs(2) == [0, 4]
    assert _coeffs(3) == [-6, 0, 30]
    assert p_poly(0).structural


@pytest.mark.parametrize("n", range(1, 41))
def test_p_three_term_recurrence(n):
    # 4n(n+1)(n+2) P_n - 2t(n+2)(2n+3) P_{n+1} + (n+3) P_{n+2} = 0
    import flint
    a, b, c = p_poly(n).flint_poly, p_poly(n + 1).flint_poly, p_poly(n + 2).flint_poly
    T = flint.fmpq_poly([0, 1])
    assert 4 * n * (n + 1) * (n + 2) * a - 2 * (n + 2) * (2 * n + 3) * T * b + (n + 3) * c == 0


def test_epsilon_values():
    assert [epsilon(n) for n in (1, 2, 3)] == [Fraction(1, 2), Fraction(3, 32), Fraction(1, 192)]


def test_q0_is_inverse_of_t2_minus_1():
    s = q_series(0, 12).series
    assert [s.coefficient(-e)[0] for e in range(1, 13)] == [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("n", [1, 2])
def test_closed_forms_against_symbolic_expansion(n):
    x = sympy.Symbol("x")
    if n == 1:
        expr = sympy.atanh(x) / 2 - (1 / x) / (2 * (1 / x ** 2 - 1))
    else:
        expr = 3 * sympy.atanh(x) / (8 * x) - sympy.Rational(1, 4) - (1 / x ** 2) / (8 * (1 / x ** 2 - 1))
    ser = sympy.series(expr, x, 0, 16).removeO()
    s = q_series(n, 15).series
    for e in range(1, 16):
        c = ser.coeff(x, e)
        assert s.coefficient(-e)[0] == Fraction(int(c.p), int(c.q))


def test_q1_leading_term():
    s = q_series(1, 10).series
    assert s.leading_exponent() == -3
    assert s.coefficient(-3)[0] == Fraction(-1, 3)


@pytest.mark.parametrize("n", [3, 5, 9, 16])
def test_recurrence_and_ode_constructions_agree(n):
    T = 2 * n + 20
    a = q_series(n, T, "recurrence").series
    b = q_series(n, T, "ode").series
    assert all(a.coefficient(-e) == b.coefficient(-e) for e in range(0, T + 1))


@given(st.integers(1, 40))
def test_leading_exponent(n):
    assert q_series(n, n + 6).series.leading_exponent() == -(n + 2)


def test_precision_guard():
    with pytest.raises(SeriesPrecisionError):
        q_series(5, 6)


@pytest.mark.parametrize("n", [1, 2, 7])
def test_wronskian_small(n):
    assert verify_wronskian(n)


def test_ode_n7():
    assert check_ode(7, 120)
