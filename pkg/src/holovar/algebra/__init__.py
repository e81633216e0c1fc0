"""Exact arithmetic substrate."""

from .linalg import ExactMatrix, Inconsistent, Underdetermined, nullspace, rref, solve_linear_exact
from .mpoly import MPoly, mpoly_factor, mpoly_gcd
from .ratfun import RatFun
from .resultant import resultant, resultant_in, sylvester_matrix
from .roots import count_roots, isolate_real_roots, refine_root
from .scalars import (
    GaussianRational,
    I,
    QuadExt,
    format_rational,
    parse_rational,
    parse_scalar,
    scalar_from_json,
    scalar_to_json,
    sqrt_in_tower,
)
from .series import (
    AlphaPoly,
    LogarithmicObstruction,
    SeriesInf,
    SeriesPrecisionError,
    series_arctanh_inv_t,
    series_integrate,
)
from .sign import SignVerdict, certify_nonnegative, sign_certify_region, sign_certify_univariate
from .taylor2 import Taylor2, binomial_series
from .unipoly import UniPoly

__all__ = [
    "AlphaPoly", "ExactMatrix", "GaussianRational", "I", "Inconsistent",
    "LogarithmicObstruction", "MPoly", "QuadExt", "RatFun", "SeriesInf",
    "SeriesPrecisionError", "SignVerdict", "Taylor2", "Underdetermined", "UniPoly",
    "binomial_series", "certify_nonnegative", "count_roots", "format_rational",
    "isolate_real_roots", "mpoly_factor", "mpoly_gcd", "nullspace", "parse_rational",
    "parse_scalar", "refine_root", "resultant", "resultant_in", "rref",
    "scalar_from_json", "scalar_to_json", "series_arctanh_inv_t", "series_integrate",
    "sign_certify_region", "sign_certify_univariate", "solve_linear_exact",
    "sqrt_in_tower", "sylvester_matrix",
]
