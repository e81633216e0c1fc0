from fractions import Fraction

import flint
import pytest
import sympy
from hypothesis import given, strategies as st

from holovar.algebra.linalg import (ExactMatrix, Inconsistent, Underdetermined, bareiss_det,
                                    nullspace, solve_linear_exact)
from holovar.algebra.resultant import resultant
from holovar.algebra.roots import count_roots, isolate_real_roots, refine_root
from holovar.algebra.scalars import (GaussianRational, QuadExt, format_rational, parse_rational,
                                     parse_scalar, rational_sqrt)
from holovar.algebra.series import (AlphaPoly, LogarithmicObstruction, SeriesInf,
                                    SeriesPrecisionError, series_arctanh_inv_t, series_integrate)
from holovar.algebra.sign import sign_certify_univariate
from holovar.algebra.unipoly import UniPoly

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gauss = st.builds(GaussianRational, rationals, rationals)


# scalars ---------------------------------------------------------------------

@given(gauss, gauss, gauss)
def test_gaussian_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a) == 0


@given(gauss, gauss)
def test_gaussian_division_inverts_multiplication(a, b):
    if b == 0:
        return
    assert (a * b) / b == a


@given(rationals, rationals, st.sampled_from([2, 3, 5, -1, Fraction(7, 3)]))
def test_quadext_norm_is_multiplicative(x, y, d):
    u = QuadExt(x, y, d)
    v = QuadExt(y - 1, x + 2, d)
    assert (u * v).norm() == u.norm() * v.norm()
    assert u * u.conj() == QuadExt(u.norm(), 0, d)


@given(rationals)
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_scalar_gaussian():
    assert parse_scalar("1/2+3i") == GaussianRational(Fraction(1, 2), 3)
    assert parse_scalar("-7/3") == Fraction(-7, 3)


@given(st.fractions(min_value=0, max_value=100, max_denominator=30))
def test_rational_sqrt_of_squares(q):
    assert rational_sqrt(q * q) == q


def test_rational_sqrt_rejects_nonsquare():
    assert rational_sqrt(Fraction(2)) is None


# resultants -----------------------------------------------------------------

def test_resultant_sylvester_convention():
    assert resultant(UniPoly([-1, 1]), UniPoly([1, 1])) == -2


def test_resultant_vanishes_on_common_factor():
    common = UniPoly([-3, 1])
    assert resultant(common * UniPoly([1, 2, 5]), common * UniPoly([7, 1])) == 0


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=3), st.integers(1, 3),
       st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(lambda c: c[-1] != 0))
def test_resultant_matches_root_product(roots, lead, q):
    # res = lc(p)^deg q * prod q(r) over the roots of p, up to the layout sign (-1)^(mn)
    p = UniPoly.from_roots([Fraction(r) for r in roots]) * lead
    qq = UniPoly([Fraction(c) for c in q])
    m, n = len(roots), len(q) - 1
    want = Fraction(lead) ** n
    for r in roots:
        want *= qq(Fraction(r))
    assert resultant(p, qq) == (-1) ** (m * n) * want


# root isolation -------------------------------------------------------------

def test_isolation_of_known_roots():
    p = flint.fmpq_poly([-2, 0, 1]) * flint.fmpq_poly([-1, 3])   # (x^2 - 2)(3x - 1)
    ivs = isolate_real_roots(p)
    assert len(ivs) == 3
    assert sum(a < Fraction(1, 3) <= b or a == b == Fraction(1, 3) for a, b in ivs) == 1
    iv = refine_root(p, max(ivs), Fraction(1, 10 ** 12))
    assert iv[0] ** 2 <= 2 <= iv[1] ** 2


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5, unique=True))
def test_isolation_counts_distinct_integer_roots(roots):
    p = UniPoly.from_roots([Fraction(r) for r in roots])
    assert len(isolate_real_roots(p)) == len(roots)
    assert count_roots(p, Fraction(-21), Fraction(21)) == len(roots)


# series --------------------------------------------------------------------

def test_arctanh_series_coefficients():
    s = series_arctanh_inv_t(12)
    for e in range(1, 12):
        want = Fraction(1, e) if e % 2 else Fraction(0)
        assert s.coefficient(-e)[0] == want


def test_series_precision_guard():
    s = series_arctanh_inv_t(6)
    with pytest.raises(SeriesPrecisionError):
        s.coefficient(-7)


def test_integrate_then_differentiate():
    s = SeriesInf.from_terms({-2: 3, -5: Fraction(1, 7), 2: 1}, 10)
    back = series_integrate(s).derivative()
    for e in (-2, -5, 2):
        assert back.coefficient(e) == s.coefficient(e)


def test_integrate_reports_logarithm():
    with pytest.raises(LogarithmicObstruction):
        series_integrate(SeriesInf.from_terms({-1: 1}, 8))


@given(st.lists(rationals, min_size=4, max_size=4), st.lists(rationals, min_size=4, max_size=4))
def test_alpha_truncation_is_a_ring_map(a, b):
    x, y = AlphaPoly(a), AlphaPoly(b)
    full = [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(4)]
    assert (x * y).c == tuple(full)


# linear algebra ---------------------------------------------------------------

def test_solve_unique():
    A = ExactMatrix.from_rows([[2, 1], [1, 3]])
    assert list(solve_linear_exact(A, [3, 5])) == [Fraction(4, 5), Fraction(7, 5)]


def test_solve_inconsistent():
    A = ExactMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(Inconsistent):
        solve_linear_exact(A, [1, 3])


def test_solve_underdetermined_gives_kernel():
    A = ExactMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(Underdetermined) as ei:
        solve_linear_exact(A, [1, 2])
    kernel = ei.value.kernel
    assert len(kernel) == 1 and kernel[0][0] + kernel[0][1] == 0


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_sympy(rows):
    assert bareiss_det(rows) == sympy.Matrix(rows).det()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=2, max_size=3))
def test_nullspace_vectors_are_annihilated(rows):
    for v in nullspace([[Fraction(x) for x in r] for r in rows], 4):
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


# sign certification -------------------------------------------------------------

def test_sign_of_polynomial_beyond_last_root():
    p = flint.fmpq_poly([-50, 0, 1])     # n^2 - 50
    assert sign_certify_univariate(p, 8).sign == 1
    assert not sign_certify_univariate(p, 7).ok


def test_sign_negative():
    assert sign_certify_univariate(flint.fmpq_poly([3, -1]), 4).sign == -1
