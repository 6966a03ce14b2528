"""Statistics over samples of unimodular lattices.

Escape (short vectors, Mahler's criterion) detects divergence. The Siegel
mean value, average #{v ∈ L∖0 : ‖v‖ ≤ r} = vol(B_r) over Haar-random L,
is the reference for equidistribution; it is an external oracle and is
labelled as such in reports.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.config.settings import EnumerationSettings
from src.utils.parallel import run_partitioned, split_range
from src.utils.types import StatisticReport

from .lattices import LatticeSample, lattice_vectors_in_ball

logger = logging.getLogger(__name__)

SIEGEL_ORACLE = "siegel_mean_value"
MAX_EXPECTED_COUNT = 1000.0


def ball_volume(r: float) -> float:
    return 4.0 / 3.0 * math.pi * r**3


def radius_for_volume(volume: float) -> float:
    return (3.0 * volume / (4.0 * math.pi)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class SampleStatistic:
    """Mean ± stderr merged from (count, sum, sum of squares)."""

    name: str
    n: int
    total: float
    total_sq: float
    expected: float | None = None
    oracle: str | None = None

    @property
    def mean(self) -> float:
        return self.total / self.n

    @property
    def stderr(self) -> float:
        if self.n < 2:
            return 0.0
        var = max(self.total_sq / self.n - self.mean**2, 0.0) * self.n / (self.n - 1)
        return math.sqrt(var / self.n)

    def to_dict(self) -> StatisticReport:
        out: StatisticReport = {
            "statistic": self.name,
            "value": self.mean,
            "stderr": self.stderr,
            "n_samples": self.n,
        }
        if self.expected is not None:
            out["expected"] = self.expected
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


def escape_fraction(samples: Sequence[LatticeSample], eps: float) -> float:
    """Fraction of samples with λ1 < eps.

    Raises:
        ValueError: unless 0 < eps < 1 and samples is non-empty.
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not samples:
        raise ValueError("no samples")
    return float(np.mean([s.lambda1 < eps for s in samples]))


def _count_chunk(bases: list[np.ndarray], r: float, max_candidates: int) -> tuple[int, float, float]:
    counts = np.array(
        [len(lattice_vectors_in_ball(b, r, max_candidates)) for b in bases], dtype=float
    )
    return len(counts), float(counts.sum()), float((counts**2).sum())


def siegel_statistic(
    samples: Sequence[LatticeSample],
    r: float,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> SampleStatistic:
    """Mean number of nonzero lattice vectors in the r-ball.

    Raises:
        ValueError: for r ≤ 0, an empty sample, or vol(B_r) above 1000.
        EnumerationLimitError: when a sample's enumeration box is too large.
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if not samples:
        raise ValueError("no samples")
    volume = ball_volume(r)
    if volume > MAX_EXPECTED_COUNT:
        raise ValueError(f"r={r} gives expected count {volume:.0f} > {MAX_EXPECTED_COUNT:.0f}")
    enumeration = enumeration or EnumerationSettings()
    bases = [s.reduced_basis for s in samples]
    tasks = [
        (bases[lo:hi], float(r), enumeration.max_candidates)
        for lo, hi in split_range(0, len(bases), max(jobs, 1))
    ]
    parts = run_partitioned(_count_chunk, tasks, jobs)
    stat = SampleStatistic(
        "siegel",
        sum(p[0] for p in parts),
        sum(p[1] for p in parts),
        sum(p[2] for p in parts),
        expected=volume,
        oracle=SIEGEL_ORACLE,
    )
    logger.debug("siegel r=%g: %.4f ± %.4f (volume %.4f)", r, stat.mean, stat.stderr, volume)
    return stat


def lambda1_quantiles(
    samples: Sequence[LatticeSample], qs: Sequence[float] = (0.05, 0.25, 0.5, 0.75, 0.95)
) -> dict[str, float]:
    """Empirical quantiles of λ1, keyed like "q0.5"."""
    values = np.array([s.lambda1 for s in samples])
    return {f"q{q:g}": float(np.quantile(values, q)) for q in qs}
