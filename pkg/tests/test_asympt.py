import random
from fractions import Fraction

import pytest

from holovar.algebra.ratfun import RatFun
from holovar.algebra.unipoly import UniPoly
from holovar.asympt import (CertificationFailure, amplification, chain, certify_form,
                            error_transfer, even_recurrence, fit_constants, formal_basis,
                            harmonic, residual_is_small)
from holovar.pfinite import PFiniteRec
import flint


def _identity():
    return PFiniteRec(1, (UniPoly([Fraction(-1)], "n"), UniPoly([Fraction(1)], "n")), 1, (Fraction(7),))


def test_harmonic_upper_limit():
    assert harmonic(1) == 0 and harmonic(2) == 1 and harmonic(4) == Fraction(11, 6)


def test_identity_recurrence_chain():
    rec = _identity()
    basis = formal_basis(rec, 4)
    assert len(basis) == 1 and basis[0].theta == 0 and basis[0].table == {(0, 0): 1}
    tr = error_transfer(rec, basis, 5)
    assert tr.M_inf == 0
    fit = fit_constants(rec, basis, tr, {5: Fraction(7)})
    assert fit.constants == (7,) and fit.radius == 0


def test_f3_basis_matches_displayed_expansion():
    rec = even_recurrence("f3")
    h_free = formal_basis(rec, 8)[1]
    assert [h_free.coefficient(0, -e) for e in range(4, 9)] == [
        1, -1, Fraction(25, 32), Fraction(-35, 64), Fraction(183, 512)]
    h_term = formal_basis(rec, 8, "free-columns")[0]
    assert h_term.coefficient(1, -4) == Fraction(3, 16)
    assert [h_term.coefficient(0, -e) for e in (2, 3, 4)] == [1, Fraction(-1, 2), Fraction(19951, 46848)]


@pytest.mark.parametrize("which", ["f1", "f3", "f2"])
def test_formal_basis_residuals(which):
    rec = even_recurrence(which)
    assert all(residual_is_small(rec, b) for b in formal_basis(rec, 8))


def test_f1_basis_has_integer_exponents():
    basis = formal_basis(even_recurrence("f1"), 8)
    assert len(basis) == 2 and all(isinstance(b.theta, int) for b in basis)


def test_f3_tail_bound():
    ch = chain("f3", 100)
    assert ch.transfer.M_inf <= Fraction(484522, 10 ** 14)


def test_transfer_majorant_spot_audit():
    ch = chain("f3", 100)
    rnd = random.Random(3)
    for n in sorted(rnd.sample(range(100, 4000), 50)):
        assert ch.transfer.norm_A_minus_I(n) <= ch.transfer.majorant(n, harmonic(n))


def test_resolvent_bound_empirically():
    ch = chain("f3", 100)
    M = ch.transfer.M_inf
    for n in (101, 130, 180):
        E = ch.transfer.E(n)
        dev = max(sum(abs(x - (i == j)) for j, x in enumerate(row)) for i, row in enumerate(E))
        assert dev <= M / (1 - M)


def test_f1_enclosure_is_tight():
    fit = chain("f1", 100).fit
    assert fit.radius < Fraction(1, 10 ** 8) * max(abs(c) for c in fit.constants)


def test_amplification_examples():
    n = flint.fmpq_poly([0, 1])
    assert amplification([RatFun(flint.fmpq_poly([1]), n)], 1).bound == 1
    b = amplification([RatFun(flint.fmpq_poly([1]), n), RatFun(flint.fmpq_poly([-1]), 2 * n)], 1).bound
    assert 3 <= b <= Fraction(3) * (1 + Fraction(1, 2 ** 20))


def test_amplification_rejects_cancelling_sum():
    n = flint.fmpq_poly([0, 1])
    with pytest.raises(CertificationFailure):
        amplification([RatFun(flint.fmpq_poly([1]), n), RatFun(flint.fmpq_poly([-1]), n)], 1)


def test_loose_two_term_form():
    ch = chain("f3", 100)
    form = {-2: Fraction(-1740684681, 68719476736), -3: Fraction(1740684681, 137438953472)}
    assert certify_form(ch, form, Fraction(1, 10 ** 3), splits=(200, 400)) >= 100
    with pytest.raises(CertificationFailure):
        certify_form(ch, form, Fraction(1, 10 ** 6), splits=(200,))


def test_small_n0_fails_cleanly():
    from holovar.asympt import certify_approx
    with pytest.raises(CertificationFailure, match="n=10"):
        certify_approx("f3", Fraction(1, 10 ** 5), 10)


def test_published_f3_constants_against_the_enclosure():
    # the published constants are 8 times the free-column constants; c2 lies
    # just outside the strict enclosure, by less than its own rounding error
    fit = chain("f3", 100, 8, "free-columns").fit
    c2, c1 = (8 * c for c in fit.constants)
    r = 8 * fit.radius
    assert abs(c1 - Fraction(-883919839, 274877906944)) <= r
    miss = abs(c2 - Fraction(-1740684681, 8589934592))
    assert r < miss < Fraction(1, 2 ** 34)


def test_canonical_leading_constant_scales_to_the_published_form():
    ch = chain("f3", 100)
    assert abs(ch.fit.constants[0] - Fraction(-1740684681, 68719476736)) < Fraction(1, 10 ** 11)
