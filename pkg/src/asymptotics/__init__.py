"""
Asymptotics

Exact and asymptotic evaluation of the exponential integrals behind the
counting laws: the g_m family with its Bessel base cases, ball integrals, and
growth of truncated-orthant regions.
"""

from src.asymptotics.ball import (
    BallIntegral,
    ball_exponential_integral,
    shifted_cone_ball_ratio,
)
from src.asymptotics.bessel import i0, i0e, i1, i1e
from src.asymptotics.gm import g_m, log_g_m, log_normalized_g_m, normalized_g_m
from src.asymptotics.region import (
    RegionEstimate,
    cone_region_estimate,
    predicted_shape,
    region_sweep,
)

__all__ = [
    "BallIntegral",
    "RegionEstimate",
    "ball_exponential_integral",
    "cone_region_estimate",
    "g_m",
    "i0",
    "i0e",
    "i1",
    "i1e",
    "log_g_m",
    "log_normalized_g_m",
    "normalized_g_m",
    "predicted_shape",
    "region_sweep",
    "shifted_cone_ball_ratio",
]
