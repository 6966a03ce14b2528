"""Lifts of the closed horocycle {x + i} of SL₂(Z)∖H² meeting a ball.

In the upper half-plane (curvature −1) the lifts are the line Im z = 1 and,
for each p/q in lowest terms with q ≥ 1, the horocycle tangent at p/q of
Euclidean diameter 1/q². An element of SL₂(Z) taking p/q to ∞ sends that
horocycle to Im z = 1 and i to a point of height 1/(p² + q²), so its
distance from i is log(p² + q²). Hence

    N(R) = 1 + #{(p, q) coprime, q ≥ 1 : p² + q² ≤ e^R}

and N(R) e^{−R} → 3/π (closed horocycle of length 1, area π/3).
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from src.rootsys.datum import RootDatum
from src.utils.parallel import merge_sum, run_partitioned, split_range

from .fitting import CountSeries
from .lattice import lattice_ball_count, mobius_value

logger = logging.getLogger(__name__)

PREDICTED_CONSTANT = 3.0 / math.pi
SIEVE = "sieve"
ENUMERATE = "enumerate"
STRATEGIES = (SIEVE, ENUMERATE)


def horocycle_distance(p: int, q: int) -> float:
    """Hyperbolic distance from i to the lift tangent at p/q (q = 0: the line)."""
    if q == 0:
        return 0.0
    return math.log(p * p + q * q)


def norm_bound(R: float) -> int:
    """floor(e^R), the largest admissible p² + q²."""
    return math.floor(math.exp(R) * (1 + 1e-12))


def _upper_pairs(X: int) -> int:
    """#{(p, q) ∈ Z², q ≥ 1 : p² + q² ≤ X}."""
    if X < 1:
        return 0
    return (lattice_ball_count(2, X) - (2 * math.isqrt(X) + 1)) // 2


def _enumerate_rows(X: int, q_lo: int, q_hi: int) -> int:
    count = 0
    for q in range(q_lo, q_hi):
        width = math.isqrt(X - q * q)
        ps = np.arange(-width, width + 1, dtype=np.int64)
        count += int((np.gcd(ps, q) == 1).sum())
    return count


def count_horocycle_lifts(R: float, strategy: str = SIEVE, jobs: int = 1) -> int:
    """#{lifts of the closed horocycle at distance ≤ R from i}.

    Raises:
        ValueError: for R < 0 or an unknown strategy.
    """
    if R < 0:
        raise ValueError(f"R must be non-negative, got {R}")
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    X = norm_bound(R)
    if strategy == SIEVE:
        tangent = sum(
            mobius_value(d) * _upper_pairs(X // (d * d)) for d in range(1, math.isqrt(X) + 1)
        )
    else:
        tasks = [(X, lo, hi) for lo, hi in split_range(1, math.isqrt(X) + 1, max(jobs, 1))]
        tangent = merge_sum(run_partitioned(_enumerate_rows, tasks, jobs))
    logger.debug("count_horocycle_lifts R=%g (%s): %d", R, strategy, tangent + 1)
    return tangent + 1


def horocycle_series(Rs: Sequence[float], strategy: str = SIEVE, jobs: int = 1) -> CountSeries:
    """N(R) over the grid with N(R)e^{−R} alongside and the predicted 3/π."""
    points = [(float(R), count_horocycle_lifts(R, strategy, jobs)) for R in Rs]
    normalized = [n * math.exp(-R) for R, n in points]
    return CountSeries.from_pairs(
        points,
        x_label="R",
        normalized=normalized,
        predicted={"c": 1.0, "constant": PREDICTED_CONSTANT},
    )


def lifts_asymptote(datum: RootDatum, R: float) -> float:
    """Growth profile (2πR/‖ρ‖)^{(r−1)/2} e^{‖ρ‖R} of lift counts for ``datum``.

    ‖ρ‖ is taken under the datum metric; A1 with metric_scale 1/2 is the
    curvature −1 plane, where the profile is e^R.
    """
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    rate = datum.rho_norm()
    return (2 * math.pi * R / rate) ** ((datum.rank - 1) / 2) * math.exp(rate * R)
