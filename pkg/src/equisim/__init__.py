"""
Equidistribution Lab

Monte-Carlo samples of translated horospherical orbits: closed horocycles
on the modular surface and translates a_t·u·Z³ in the space of unimodular
lattices, with the statistics used to tell escape from equidistribution.
"""

from src.equisim.horocycle import (
    HPoint,
    cusp_mass,
    cusp_report,
    reduce_point,
    sample_horocycle_sl2,
)
from src.equisim.lattices import (
    LatticeSample,
    greedy_reduce,
    sample_translate_lattices_sl3,
)
from src.equisim.statistics import (
    SampleStatistic,
    ball_volume,
    escape_fraction,
    lambda1_quantiles,
    radius_for_volume,
    siegel_statistic,
)

__all__ = [
    "HPoint",
    "LatticeSample",
    "SampleStatistic",
    "ball_volume",
    "cusp_mass",
    "cusp_report",
    "escape_fraction",
    "greedy_reduce",
    "lambda1_quantiles",
    "radius_for_volume",
    "reduce_point",
    "sample_horocycle_sl2",
    "sample_translate_lattices_sl3",
    "siegel_statistic",
]
