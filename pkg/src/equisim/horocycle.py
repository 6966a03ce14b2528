"""Translated closed horocycles on SL₂(Z)∖H².

The closed horocycle at height y0 is {x + i y0 : 0 ≤ x < 1}. Pushing it by
the diagonal flow is the same as lowering y0, and as y0 → 0 its points
equidistribute for the hyperbolic area (total π/3). The fraction above
height h ≥ 1 in the standard fundamental domain then tends to (3/π)/h.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.config.settings import SimulationSettings
from src.utils.types import StatisticReport

logger = logging.getLogger(__name__)

CUSP_ORACLE = "cusp_area"
_TOL = 1e-12


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float
    reduced: bool = False

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"HPoint needs y > 0, got {self.y}")


def _in_domain(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (np.abs(x) <= 0.5 + _TOL) & (x * x + y * y >= 1.0 - _TOL)


def reduce_points(
    xs: np.ndarray, ys: np.ndarray, simulation: SimulationSettings | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Map each x + iy into the standard fundamental domain.

    Alternates z ↦ z − round(Re z) and z ↦ −1/z while |z| < 1.

    Raises:
        RuntimeError: if some point is still outside after the iteration cap.
    """
    simulation = simulation or SimulationSettings()
    x = np.array(xs, dtype=float)
    y = np.array(ys, dtype=float)
    for _ in range(simulation.reduction_max_iter):
        x = x - np.round(x)
        inside = x * x + y * y < 1.0 - _TOL
        if not inside.any():
            return x, y
        norm = x[inside] ** 2 + y[inside] ** 2
        x[inside] = -x[inside] / norm
        y[inside] = y[inside] / norm
    raise RuntimeError(f"reduction did not settle in {simulation.reduction_max_iter} steps")


def reduce_point(point: HPoint, simulation: SimulationSettings | None = None) -> HPoint:
    x, y = reduce_points(np.array([point.x]), np.array([point.y]), simulation)
    return HPoint(float(x[0]), float(y[0]), True)


def sample_horocycle_sl2(
    y0: float, N: int, simulation: SimulationSettings | None = None
) -> list[HPoint]:
    """The N points k/N + i y0, each reduced into the fundamental domain.

    Raises:
        ValueError: for y0 ≤ 0 or N < 1.
    """
    if not y0 > 0:
        raise ValueError(f"y0 must be positive, got {y0}")
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    x, y = reduce_points(np.arange(N) / N, np.full(N, float(y0)), simulation)
    logger.debug("sampled %d horocycle points at y0=%g", N, y0)
    return [HPoint(float(a), float(b), True) for a, b in zip(x, y)]


def cusp_mass(points: Sequence[HPoint], h: float) -> float:
    """Fraction of points with Im z > h.

    Raises:
        ValueError: for h < 1, an unreduced point or an empty sample.
    """
    if h < 1:
        raise ValueError(f"h must be at least 1, got {h}")
    if not points:
        raise ValueError("no points")
    x = np.array([p.x for p in points])
    y = np.array([p.y for p in points])
    if not all(p.reduced for p in points) or not _in_domain(x, y).all():
        raise ValueError("cusp_mass needs points reduced into the fundamental domain")
    return float((y > h).mean())


def cusp_report(points: Sequence[HPoint], h: float) -> StatisticReport:
    """cusp_mass with the area prediction (3/π)/h and its binomial stderr."""
    value = cusp_mass(points, h)
    n = len(points)
    return {
        "statistic": "cusp_mass",
        "value": value,
        "stderr": math.sqrt(max(value * (1 - value), 0.0) / n),
        "n_samples": n,
        "expected": 3.0 / (math.pi * h),
        "oracle": CUSP_ORACLE,
    }
