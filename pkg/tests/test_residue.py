import random
from fractions import Fraction

import pytest

from holovar.algebra.series import LogarithmicObstruction
from holovar.residue import (CacheMismatch, FValueCache, f1_oracle, f2_oracle, f3_oracle,
                             f_table, f_value, fast_value, order0_condition)
from holovar.pfinite import load_fixture, rec_eval


@pytest.mark.parametrize("which,n", [("f3", 1), ("f3", 2), ("f3", 5), ("f1", 2), ("f1", 3),
                                     ("f1", 6), ("f2", 2), ("f2", 4), ("f2", 8)])
def test_fast_route_matches_generic_route(which, n):
    oracle = {"f1": f1_oracle, "f2": f2_oracle, "f3": f3_oracle}[which]
    assert fast_value(which, n) == oracle(n)


def test_third_values_follow_from_recurrences():
    f3 = rec_eval(load_fixture("f3"), 3)
    assert f3_oracle(3) == f3[3]
    f1 = rec_eval(load_fixture("f1"), 4)
    assert f1_oracle(4) == f1[4]


def test_f2_odd_is_logarithmic():
    with pytest.raises(LogarithmicObstruction):
        fast_value("f2", 3)


def test_order_zero_rule():
    rule = order0_condition()
    assert rule.a2_residue == 0 and rule.c_residue == 0
    assert rule.holds(0) and not rule.holds(Fraction(1, 2))


def test_doubling_is_stable_on_random_calls():
    rnd = random.Random(7)
    for _ in range(5):
        which = rnd.choice(["f1", "f3", "f2"])
        n = rnd.randrange(2, 9)
        if which == "f2":
            n += n % 2
        oracle = {"f1": f1_oracle, "f2": f2_oracle, "f3": f3_oracle}[which]
        assert oracle(n, T=8 * n + 64, doubling=True) == oracle(n, T=16 * n + 128, doubling=False)


def test_table_jobs_agree():
    ns = [2, 3, 4, 5]
    assert f_table("f1", ns, jobs=1) == f_table("f1", ns, jobs=2)


def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "v.csv")
    c = FValueCache(path)
    c.put("f3", 1, Fraction(-8, 105))
    c.save()
    d = FValueCache(path)
    assert d.get("f3", 1) == Fraction(-8, 105)
    assert d.hits == 1
    with pytest.raises(CacheMismatch):
        d.put("f3", 1, Fraction(1))


def test_f_value_methods_agree():
    assert f_value("f3", 4, "fast") == f_value("f3", 4, "generic")


def test_f2_odd_obstruction_sits_in_the_linear_alpha_slot():
    with pytest.raises(LogarithmicObstruction) as ei:
        f2_oracle(3)
    c = ei.value.coefficient
    assert (c[0], c[1], c[2], c[3]) == (0, Fraction(2, 1155), 0, 0)
