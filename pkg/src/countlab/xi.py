"""Dyadic-shell tail check for the SL₂ height series.

At the identity the series is Σ (c² + d²)^{−s} over coprime (c, d) up to
sign. Terms are grouped in shells 2ⁿ ≤ c² + d² < 2ⁿ⁺¹; each shell holds
about (3/2)·2ⁿ pairs, so shell masses shrink like 2^{(1−s)n} and the series
converges exactly when s > 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

import numpy as np

logger = logging.getLogger(__name__)


class XiStatus(str, Enum):
    CONVERGES = "Converges"
    DIVERGENCE_EXPECTED = "DivergenceExpected"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class XiShell:
    n: int
    count: int
    mass: float
    bound: float
    cumulative: float
    complete: bool


@dataclass(frozen=True)
class XiReport:
    s: float
    Q_max: int
    status: XiStatus
    shells: tuple[XiShell, ...]

    @property
    def max_ratio(self) -> float | None:
        """Largest successive mass ratio over the later complete shells."""
        ratios = late_ratios(self.shells)
        return max(ratios) if ratios else None

    @property
    def total(self) -> float:
        return self.shells[-1].cumulative if self.shells else 0.0

    def tail_after(self, n: int) -> float:
        """Mass of the shells beyond ``n`` that lie within Q_max."""
        return sum(sh.mass for sh in self.shells if sh.n > n)

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "Q_max": self.Q_max,
            "status": self.status.value,
            "total": self.total,
            "max_ratio": self.max_ratio,
            "shells": [asdict(sh) for sh in self.shells],
        }


def coprime_norm_counts(Q_max: int) -> np.ndarray:
    """counts[k] = #{(c, d) coprime up to sign : c² + d² = k}, k ≤ Q_max."""
    counts = np.zeros(Q_max + 1, dtype=np.int64)
    r = math.isqrt(Q_max)
    for c in range(0, r + 1):
        width = math.isqrt(Q_max - c * c)
        if c == 0:
            ds = np.array([1], dtype=np.int64)
        else:
            ds = np.arange(-width, width + 1, dtype=np.int64)
            ds = ds[np.gcd(ds, c) == 1]
        np.add.at(counts, c * c + ds * ds, 1)
    return counts


def ratio_cap(s: float) -> float:
    """Largest shell-to-shell mass ratio accepted as geometric decay."""
    return 0.5 * (1.0 + 2.0 ** (1.0 - s))


def late_ratios(shells: list[XiShell] | tuple[XiShell, ...]) -> list[float]:
    """Successive mass ratios over the later half of the complete shells."""
    complete = [sh for sh in shells if sh.complete and sh.mass > 0]
    late = complete[len(complete) // 2 :]
    return [b.mass / a.mass for a, b in zip(late, late[1:])]


def _decays(shells: list[XiShell], s: float) -> bool:
    ratios = late_ratios(shells)
    return len(ratios) >= 2 and max(ratios) <= ratio_cap(s)


def xi_tail_check(s: float, Q_max: int) -> XiReport:
    """Shell masses, geometric bounds and partial sums up to c² + d² ≤ Q_max.

    For s ≤ 1 the shells are still reported, with status DivergenceExpected.
    For s > 1 the status is Converges when the later complete shells decay
    geometrically: every successive mass ratio stays below ``ratio_cap(s)``.

    Raises:
        ValueError: for Q_max < 2.
    """
    if Q_max < 2:
        raise ValueError(f"Q_max must be at least 2, got {Q_max}")
    counts = coprime_norm_counts(Q_max)
    ks = np.arange(Q_max + 1, dtype=np.float64)
    weights = np.zeros(Q_max + 1)
    weights[1:] = counts[1:] * ks[1:] ** (-s)

    shells: list[XiShell] = []
    cumulative = 0.0
    n = 0
    while (1 << n) <= Q_max:
        lo, hi = 1 << n, min((1 << (n + 1)) - 1, Q_max)
        count = int(counts[lo : hi + 1].sum())
        mass = float(weights[lo : hi + 1].sum())
        cumulative += mass
        shells.append(
            XiShell(n, count, mass, count * 2.0 ** (-s * n), cumulative, hi == (1 << (n + 1)) - 1)
        )
        n += 1

    if s <= 1:
        status = XiStatus.DIVERGENCE_EXPECTED
    elif _decays(shells, s):
        status = XiStatus.CONVERGES
    else:
        status = XiStatus.INCONCLUSIVE
        logger.warning("shell masses for s=%g do not yet decay geometrically by Q_max=%d", s, Q_max)
    logger.debug("xi_tail_check s=%g Q_max=%d: %s total=%.6g", s, Q_max, status.value, cumulative)
    return XiReport(float(s), int(Q_max), status, tuple(shells))
