"""Darboux points, higher variational conditions and the classification of
r^-1 h(e^{i theta}) with deg h <= 3."""

from .classify import Classification, classify, match_family
from .conditions import f_values, order2_check, order3_check
from .darboux import (
    DarbouxData,
    NoDarbouxPoint,
    TowerOverflow,
    darboux_points,
    eigenvalue_k_index,
    normalize_at,
)
from .derivatives import DerivativeData, cartesian_derivatives
from .diophantine import DiophantineCurve, MethodInapplicable, solve_diophantine_asymptote
from .pipelines import (
    E4Instance,
    e23_order3_pipeline,
    e4_instance,
    e4_order2_pipeline,
    e4_order3_pipeline,
)
from .potential import TrigPotential

__all__ = [
    "Classification", "classify", "match_family", "f_values", "order2_check", "order3_check",
    "DarbouxData", "NoDarbouxPoint", "TowerOverflow", "darboux_points", "eigenvalue_k_index",
    "normalize_at", "DerivativeData", "cartesian_derivatives", "DiophantineCurve",
    "MethodInapplicable", "solve_diophantine_asymptote", "E4Instance", "e23_order3_pipeline",
    "e4_instance", "e4_order2_pipeline", "e4_order3_pipeline", "TrigPotential",
]
