from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from holovar.algebra.unipoly import UniPoly
from holovar.pfinite import (InsufficientData, PFiniteRec, SingularIndex, equivalent_on,
                             gamma_term_ratio, hypergeometric_check, load_fixture, perturbed,
                             ratio_matches, rec_eval, rec_even_subsequence, rec_guess, rec_verify,
                             term_from_ratio)
from holovar.residue import f1_oracle, f3_oracle


def _u(*c):
    return UniPoly([Fraction(x) for x in c], "n")


def test_constant_recurrence():
    rec = PFiniteRec(1, (_u(-1), _u(1)), 0, (Fraction(7),))
    assert set(rec_eval(rec, 10).values()) == {7}


def test_singular_index_is_reported():
    rec = PFiniteRec(1, (_u(1), _u(-3, 1)), 0, (Fraction(1),))   # (n - 3) y(n+1) + y(n) = 0
    with pytest.raises(SingularIndex):
        rec_eval(rec, 10)


def test_f3_fixture_first_step():
    # (4n+11)(4n+9)(n+1)^3(n+3)^2 f(n+2) = (2n+3)(16n^6+...+81) f(n+1) - (4n+3)(4n+1)(n+2)^3 n^2 f(n)
    n = 1
    f1, f2 = Fraction(-8, 105), Fraction(-8, 385)
    poly = 16 * n ** 6 + 144 * n ** 5 + 515 * n ** 4 + 930 * n ** 3 + 888 * n ** 2 + 423 * n + 81
    want = ((2 * n + 3) * poly * f2 - (4 * n + 3) * (4 * n + 1) * (n + 2) ** 3 * n ** 2 * f1) / (
        (4 * n + 11) * (4 * n + 9) * (n + 1) ** 3 * (n + 3) ** 2)
    assert rec_eval(load_fixture("f3"), 3)[3] == want


def test_f1_fixture_matches_oracle_at_4():
    assert rec_eval(load_fixture("f1"), 4)[4] == f1_oracle(4)


def test_perturbed_fixture_is_rejected():
    rec = perturbed(load_fixture("f3"), 0, 0, 1)
    assert not rec_verify(rec, f3_oracle, range(1, 12))


@given(st.integers(0, 2 ** 32))
def test_random_mutation_is_rejected(seed):
    rec = perturbed(load_fixture("f3"), seed=seed)
    vals = rec_eval(load_fixture("f3"), 14)
    assert not rec_verify(rec, vals, range(1, 15))


def test_guess_geometric():
    rec = rec_guess([2 ** n for n in range(21)], 0, 1, 1)
    assert rec.order == 1 and rec.degree == 0
    assert rec.coeffs[0].coeffs[0] == -2 * rec.coeffs[1].coeffs[0]


def test_guess_requires_enough_terms():
    with pytest.raises(InsufficientData, match="at least"):
        rec_guess([1, 2, 3], 0, 2, 2)


def test_guess_reproduces_f3_fixture():
    vals = {n: f3_oracle(n) for n in range(1, 39)}
    rec = rec_guess([vals[n] for n in range(1, 31)], 1, 2, 7, margin=1)
    assert (rec.order, rec.degree) == (2, 7)
    assert equivalent_on(rec, load_fixture("f3"), vals)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=3).filter(lambda c: c[-1] != 0))
def test_guess_is_deterministic_and_verified(poly):
    seq = [Fraction(sum(c * n ** i for i, c in enumerate(poly))) for n in range(30)]
    a = rec_guess(seq, 0, 2, 2)
    b = rec_guess(seq, 0, 2, 2)
    assert a.to_json() == b.to_json()
    assert rec_verify(a, dict(enumerate(seq)), range(30))


def test_json_roundtrip():
    rec = load_fixture("f1")
    assert PFiniteRec.from_json(rec.to_json()).to_json() == rec.to_json()


def test_even_subsequence_of_identity():
    rec = rec_even_subsequence(lambda n: Fraction(n), 1, 1, 20, holdout=10)
    vals = {m: Fraction(2 * m) for m in range(1, 40)}
    assert rec_verify(rec, vals, vals.keys())


def test_factorial_is_hypergeometric():
    from math import factorial
    v = hypergeometric_check([Fraction(1, factorial(m)) for m in range(20)], 0)
    assert v.hypergeometric
    num, den = v.ratio
    assert all(num(Fraction(m)) / den(Fraction(m)) == Fraction(1, m + 1) for m in range(10))


def test_hypergeometric_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        hypergeometric_check([1] * 5 + [0] + [1] * 6)


def test_f3_even_not_hypergeometric():
    vals = rec_eval(load_fixture("f3"), 80)
    assert not hypergeometric_check([vals[2 * m] for m in range(1, 40)], 1).hypergeometric


def test_gamma_quotient_ratio_helpers():
    seq = term_from_ratio(Fraction(1), gamma_term_ratio, 1, 6)
    assert ratio_matches(seq, 1, gamma_term_ratio) == (True, None)


def test_gamma_term_solves_f2_recurrence_but_is_not_f2():
    from holovar.asympt import even_values
    term = term_from_ratio(Fraction(1), gamma_term_ratio, 1, 30)
    assert rec_verify(load_fixture("f2_even"), {m + 1: v for m, v in enumerate(term)}, range(1, 31))
    g = even_values("f2", 30)
    assert ratio_matches([g[m] for m in range(1, 31)], 1, gamma_term_ratio) == (False, 1)
    assert not hypergeometric_check([g[m] for m in range(1, 31)], 1).hypergeometric
