"""Second and third order integrability conditions at one Darboux point.

For eigenvalue index p the third order condition is linear in the values
f1(p), f2(p), f3(p):

    even p:  d122^2 f1 + d222^2 f2 + d2222 f3 = 0
    odd p:   d222 = 0  and  d122^2 f1 + d2222 f3 = 0
    p = 0:   d222 = 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from ..algebra.scalars import scalar_to_json
from ..pfinite import load_fixture, rec_eval
from .darboux import simplify
from .derivatives import DerivativeData


class MissingFValues(ValueError):
    pass


@dataclass(frozen=True)
class ConditionResult:
    order: int
    passed: bool
    value: object = 0      # the obstruction; zero when passed
    reason: str = ""

    def to_json(self) -> dict:
        return {"order": self.order, "passed": self.passed,
                "value": scalar_to_json(self.value), "reason": self.reason}


def order2_check(dd: DerivativeData, k: int) -> ConditionResult:
    if k % 2 == 0 or dd.d222 == 0:
        return ConditionResult(2, True)
    return ConditionResult(2, False, dd.d222, "odd index with nonzero third derivative")


def order3_value(dd: DerivativeData, p: int, f1=None, f2=None, f3=None):
    """The linear obstruction; f-values whose coefficient vanishes may be None."""
    parts = [(dd.d122 ** 2, f1, "f1"), (dd.d2222, f3, "f3")]
    if p % 2 == 0:
        parts.append((dd.d222 ** 2, f2, "f2"))
    acc = Fraction(0)
    for coef, f, name in parts:
        if coef == 0:
            continue
        if f is None:
            raise MissingFValues(f"{name}({p}) is needed")
        acc = acc + coef * f
    return simplify(acc)


def order3_check(dd: DerivativeData, p: int, f1=None, f2=None, f3=None) -> ConditionResult:
    if p < 0:
        raise ValueError("eigenvalue index must be >= 0")
    if p == 0:
        return ConditionResult(3, dd.d222 == 0, dd.d222, "" if dd.d222 == 0 else "d222 != 0 at p = 0")
    if p % 2 and dd.d222 != 0:
        return ConditionResult(3, False, dd.d222, "odd index with nonzero third derivative")
    v = order3_value(dd, p, f1, f2, f3)
    return ConditionResult(3, v == 0, v, "" if v == 0 else "nonzero third order obstruction")


# exact f-values from the recurrences --------------------------------------------------

@lru_cache(maxsize=None)
def _full(which: str, p_max: int) -> Dict[int, Fraction]:
    return rec_eval(load_fixture(which), p_max)


def _table_bound(p: int) -> int:
    b = 64
    while b < p:
        b *= 2
    return b


def f_values(p: int) -> Tuple[Optional[Fraction], Optional[Fraction], Optional[Fraction]]:
    """(f1(p), f2(p), f3(p)); f1 is None at p = 1 and f2 at odd p."""
    if p < 1:
        raise ValueError("f-values start at index 1")
    from ..asympt import even_values
    b = _table_bound(p)
    f3 = _full("f3", b)[p]
    f1 = _full("f1", b)[p] if p >= 2 else None
    f2 = even_values("f2", b // 2)[p // 2] if p % 2 == 0 else None
    return f1, f2, f3
