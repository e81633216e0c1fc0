from fractions import Fraction

import flint
import pytest
from hypothesis import given, strategies as st

from holovar.algebra.scalars import GaussianRational, QuadExt
from holovar.integrability.classify import classify, match_family
from holovar.integrability.conditions import order2_check, order3_check
from holovar.integrability.darboux import (NoDarbouxPoint, darboux_points, eigenvalue_k_index,
                                           normalize_at, simplify)
from holovar.integrability.derivatives import DerivativeData, cartesian_derivatives
from holovar.integrability.diophantine import (DiophantineCurve, MethodInapplicable, limit_interval,
                                               mixed_parity_quartic, solve_diophantine_asymptote)
from holovar.integrability.families import (displayed_eigen_resultant, e2, e3, e4, e4_discriminant,
                                            e4_satisfies_eigen_factors, e4_second_point, e4_symbolic,
                                            eigen_resultant, proportional, special_loci)
from holovar.integrability.pipelines import (displayed_family_coeffs, e4_instance, e4_order2_pipeline,
                                             e4_pair_order2, e4_scan, e23_order3_pipeline,
                                             family_condition_coeffs, family_derivative_polys,
                                             q_symmetry_holds, discriminant_structure)
from holovar.integrability.potential import TrigPotential
from holovar.integrability.symbolic import QuadRF, gens

SPECIAL = TrigPotential((-20, Fraction(105, 2), -42, Fraction(21, 2)))


# Darboux points -----------------------------------------------------------------

def test_eigenvalue_table():
    assert eigenvalue_k_index(Fraction(2)) == 2
    assert eigenvalue_k_index(Fraction(-1)) == 0
    assert eigenvalue_k_index(Fraction(3, 7)) is None


def test_no_critical_point_for_pure_cube():
    assert darboux_points(TrigPotential((1, 0, 0, 1))) == []


def test_constant_has_no_darboux_point():
    with pytest.raises(NoDarbouxPoint):
        darboux_points(TrigPotential((3, 0, 0, 0)))


def test_cube_of_linear_is_degenerate():
    pts = darboux_points(TrigPotential((-1, 3, -3, 1)))
    assert len(pts) == 1 and pts[0].z0 == 1 and pts[0].degenerate


def test_e4_points_are_one_and_the_second_root():
    V = e4(2, 4)
    zs = {p.z0 for p in darboux_points(V)}
    assert zs == {1, e4_second_point(2, 4)}


def test_special_potential_second_point_in_sqrt_field():
    pts = [p for p in darboux_points(SPECIAL) if not p.degenerate]
    assert sorted(p.k for p in pts) == [6, 14]
    for p in pts:
        hh = normalize_at(SPECIAL, p)
        assert simplify(hh(1)) == 1 and simplify(hh.dh(1)) == 0


rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(rat, rat)
def test_normalization_preserves_eigenvalue(a, b):
    V = TrigPotential.from_ab(a, b)
    try:
        pts = darboux_points(V)
    except NoDarbouxPoint:
        return
    for p in pts:
        if p.degenerate or isinstance(p.z0, QuadExt):
            continue
        hh = normalize_at(V, p)
        assert simplify(hh(1)) == 1 and simplify(hh.dh(1)) == 0
        assert simplify(hh.U2(1) - 1) == p.lam
        # the Euler relation on the low Taylor coefficients is checked inside
        cartesian_derivatives(hh)


# derivatives ----------------------------------------------------------------------

def test_kepler_derivatives():
    dd = cartesian_derivatives(TrigPotential((1, 0, 0, 0)))
    assert dd.d222 == 0 and dd.d2222 == 9


def test_family_third_derivatives():
    k = flint.fmpq_poly([0, 1])
    assert family_derivative_polys("E2", k)[1] == flint.fmpq(5, 2) * k * (k + 1)
    assert family_derivative_polys("E3", k)[1] == flint.fmpq(3, 2) * k * (k + 1)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_family_third_derivative_numerically(k):
    for V, c in ((e2(k), Fraction(5, 2)), (e3(k), Fraction(3, 2))):
        p = [q for q in darboux_points(V) if q.z0 == 1][0]
        assert p.k == k
        assert cartesian_derivatives(normalize_at(V, p)).d222 == GaussianRational(0, c * k * (k + 1))


def test_e4_third_derivative_at_k1_point():
    l1, l2, *_ = gens()
    d = e4_discriminant(l1, l2)
    s, L1, L2 = QuadRF(0, 1, d), QuadRF(l1, 0, d), QuadRF(l2, 0, d)
    assert (e4_symbolic()[0].t - (s + 15 * L1 + 9 * L2) * L1 / (3 * (L1 + L2))).is_zero()


# conditions -----------------------------------------------------------------------

def test_order2_rules():
    odd = DerivativeData(-3, GaussianRational(0, 5), 1)
    assert not order2_check(odd, 3).passed
    assert order2_check(odd, 4).passed
    assert order2_check(DerivativeData(-3, 0, 1), 3).passed


def test_order3_zero_derivatives_pass():
    assert order3_check(DerivativeData(0, 0, 0), 4, 1, 1, 1).passed


def test_order3_needs_only_present_f_values():
    assert order3_check(DerivativeData(0, 0, 0), 1).passed


# families --------------------------------------------------------------------------

def test_eigen_resultant_factorization():
    assert proportional(eigen_resultant(), displayed_eigen_resultant()) == 1
    for computed, displayed in special_loci().values():
        assert proportional(computed, displayed) in (1, -1)
    assert e4_satisfies_eigen_factors()


def test_family_conditions_match_display():
    for fam in (1, 2):
        assert list(family_condition_coeffs(fam)) == list(displayed_family_coeffs(fam))


# Diophantine ------------------------------------------------------------------------

def test_quartic_points_and_brackets():
    res = solve_diophantine_asymptote(mixed_parity_quartic())
    assert res.points == [(0, 0), (6, 14)]
    assert sorted(limit_interval(c) for c in res.certificates) == [(4, 5), (8, 9)]
    assert all(c.largest_critical_root is None or c.largest_critical_root < 50 for c in res.certificates)


def test_diagonal_line_is_inapplicable():
    with pytest.raises(MethodInapplicable):
        solve_diophantine_asymptote(DiophantineCurve.from_dict({(1, 0): 1, (0, 1): -1}))


# pipelines ------------------------------------------------------------------------------

def test_order2_parity_analysis():
    r = e4_order2_pipeline()
    assert r.surviving_parity == "even-even"
    assert r.quartic_matches


@pytest.mark.parametrize("pair,ok", [((1, 5), False), ((5, 4), False), ((4, 5), False),
                                     ((2, 2), True), ((6, 14), True)])
def test_order2_on_pairs(pair, ok):
    assert e4_pair_order2(*pair) is ok


def test_e4_scan_small_box():
    assert e4_scan(40) == [(2, 2)]


def test_instance_2_2_vanishes():
    inst = e4_instance(2, 2)
    assert inst.passes()


def test_instance_6_14_fails_both_valuations():
    inst = e4_instance(6, 14)
    assert inst.d == 1260 ** 2
    assert inst.passes() == []
    assert inst.C[-1][14] == Fraction(1199700634443058439440, 30869615528791649181)
    assert inst.C[-1][6] == Fraction(209532624, 26558675)


def _fq(v):
    return flint.fmpq(v.numerator, v.denominator)


@pytest.mark.parametrize("pair", [(2, 6), (4, 8), (10, 4)])
def test_q_values_agree_with_the_sqrt_free_formula(pair):
    # route 1: per-valuation conditions on concrete potentials, multiplied;
    # route 2: the symbolic product C(s) C(-s) evaluated at the pair
    from holovar.integrability.conditions import f_values
    from holovar.integrability.families import shifted_lambda
    inst = e4_instance(*pair)
    for point, idx, got in ((0, pair[0], inst.Q_value_12), (1, pair[1], inst.Q_value_21)):
        Q = e4_symbolic()[point].Q()
        args = [_fq(v) for v in (shifted_lambda(pair[0]), shifted_lambda(pair[1]), *f_values(idx))]
        num, den = Q.num(*args), Q.den(*args)
        assert Fraction(int(num.p), int(num.q)) / Fraction(int(den.p), int(den.q)) == got


def test_q_condition_symmetry():
    assert q_symmetry_holds()


def test_discriminant_structure():
    assert discriminant_structure()["matches"]


def test_e23_small_scan():
    for fam in (1, 2):
        r = e23_order3_pipeline(fam, 20, None)
        assert r.exact_zeros == [] and r.tail is None


# classify -------------------------------------------------------------------------------

@pytest.mark.parametrize("coeffs,verdict,family,status", [
    ((1, 0, 0, 0), "integrable-candidate", "a", "known-integrable"),
    ((0, 1, 0, 1), "integrable-candidate", "az+bz^3", "known-integrable"),
    ((1, 3, 3, 1), "integrable-candidate", "(a+bz)^3", "open"),
    ((1, 0, 1, 0), "integrable-candidate", "a+bz^2", "open"),
    ((2, 1, 0, 0), "integrable-candidate", "a+bz", "known-integrable"),
    ((1, 0, 0, 3), "integrable-candidate", "a+bz^3", "open"),
])
def test_classify_families(coeffs, verdict, family, status):
    c = classify(TrigPotential(coeffs))
    assert (c.verdict, c.family, c.status) == (verdict, family, status)


def test_classify_special_potential():
    c = classify(SPECIAL)
    assert c.verdict == "non-integrable" and c.failed_order == 3
    assert all(any(ch["order"] == 2 and ch["passed"] for ch in p.checks) for p in c.points)


def test_e2_odd_fails_at_order_two():
    c = classify(e2(3))
    assert c.failed_order == 2


@pytest.mark.parametrize("coeffs,family", [((1, -2, 1, 0), "(a+bz)^2"), ((1, 0, -3, 2), "(a+bz)^2(a-2bz)")])
def test_strict_meromorphy_flag(coeffs, family):
    plain = classify(TrigPotential(coeffs))
    assert plain.verdict == "non-integrable" and plain.failed_order == 1
    strict = classify(TrigPotential(coeffs), strict_meromorphy=True)
    assert (strict.verdict, strict.family) == ("open", family)


@given(rat, rat, rat, rat)
def test_match_family_is_scale_invariant(a, b, c, d):
    V = TrigPotential((a, b, c, d))
    W = TrigPotential((3 * a, 3 * b, 3 * c, 3 * d))
    assert match_family(V) == match_family(W)
