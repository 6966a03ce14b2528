"""
Counting Lab

Exact point counts behind the flag and horocycle counting laws: exponents
of a line bundle, projective and SL₃ flag heights, horocycle lifts, growth
fitting and the height-series tail check.
"""

from src.countlab.exponents import (
    CountingExponents,
    LineBundleChar,
    counting_exponents,
    max_type_not_in,
    partial_exponents,
)
from src.countlab.fitting import (
    CountSeries,
    FitError,
    FitResult,
    dyadic_grid,
    fit_growth,
    fit_points,
    linear_grid,
    log_grid,
)
from src.countlab.flags import count_flags_sl3, flags_series, tensor_height_check
from src.countlab.horocycles import count_horocycle_lifts, horocycle_series, lifts_asymptote
from src.countlab.projective import count_projective, projective_series
from src.countlab.xi import XiReport, XiStatus, xi_tail_check

__all__ = [
    "CountSeries",
    "CountingExponents",
    "FitError",
    "FitResult",
    "LineBundleChar",
    "XiReport",
    "XiStatus",
    "count_flags_sl3",
    "count_horocycle_lifts",
    "count_projective",
    "counting_exponents",
    "dyadic_grid",
    "fit_growth",
    "fit_points",
    "flags_series",
    "horocycle_series",
    "lifts_asymptote",
    "linear_grid",
    "log_grid",
    "max_type_not_in",
    "partial_exponents",
    "projective_series",
    "tensor_height_check",
    "xi_tail_check",
]
