"""Typed settings sections for horocone.

Each section mirrors one top-level mapping of the YAML settings file. The
defaults here are what the tool runs with when no settings file exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class NumericsSettings:
    """Tolerances and switch points for the special-function code.

    Attributes:
        bessel_crossover: Argument above which I0/I1 use the large-x
            asymptotic expansion instead of the power series.
        grid_rel_tol: Relative change between successive grid refinements
            at which the simplex quadrature stops.
        grid_max_points: Upper bound on points per axis for grid quadrature.
        gm_series_max_terms: Cap on terms of the g_m power series.
    """

    bessel_crossover: float = 15.0
    grid_rel_tol: float = 1e-4
    grid_max_points: int = 4096
    gm_series_max_terms: int = 500


@dataclass(frozen=True)
class EnumerationSettings:
    max_candidates: int = 2_000_000
    block_size: int = 1024


@dataclass(frozen=True)
class FittingSettings:
    min_points: int = 5
    snap_max_denominator: int = 6
    snap_tolerance: float = 0.2


@dataclass(frozen=True)
class SimulationSettings:
    default_seed: int = 0
    reduction_max_iter: int = 10_000


@dataclass(frozen=True)
class RuntimeSettings:
    jobs: int = 1
    log_level: str = "WARNING"


@dataclass(frozen=True)
class Settings:
    """All settings sections bundled together."""

    numerics: NumericsSettings = field(default_factory=NumericsSettings)
    enumeration: EnumerationSettings = field(default_factory=EnumerationSettings)
    fitting: FittingSettings = field(default_factory=FittingSettings)
    simulation: SimulationSettings = field(default_factory=SimulationSettings)
    runtime: RuntimeSettings = field(default_factory=RuntimeSettings)
