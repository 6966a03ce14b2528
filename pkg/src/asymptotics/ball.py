"""Exponential integrals over Euclidean balls.

∫_{‖y‖≤R} e^{⟨v0, y⟩} dy = ν_{n−1} Rⁿ g_{n−1}(‖v0‖R) after slicing along v0
(ν_k the volume of the unit k-ball). As R → ∞ this is asymptotic to
(2πR/‖v0‖)^{(n−1)/2} e^{‖v0‖R} / ‖v0‖.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from src.config.settings import NumericsSettings
from src.utils.types import BallReport

from .gm import log_g_m

logger = logging.getLogger(__name__)


def log_unit_ball_volume(k: int) -> float:
    """log ν_k = log(π^{k/2} / Γ(k/2 + 1))."""
    return 0.5 * k * math.log(math.pi) - math.lgamma(0.5 * k + 1.0)


def _safe_exp(value: float) -> float:
    return math.exp(value) if value < 709.0 else math.inf


@dataclass(frozen=True)
class BallIntegral:
    """Exact value and asymptote; the log fields stay finite past float range."""

    n: int
    v0_norm: float
    R: float
    log_exact_value: float
    log_asymptote: float

    @property
    def exact_value(self) -> float:
        return _safe_exp(self.log_exact_value)

    @property
    def asymptote(self) -> float:
        return _safe_exp(self.log_asymptote)

    @property
    def ratio(self) -> float:
        return math.exp(self.log_exact_value - self.log_asymptote)

    def to_dict(self) -> BallReport:
        out = asdict(self)
        out.update(exact_value=self.exact_value, asymptote=self.asymptote, ratio=self.ratio)
        return out


def ball_exponential_integral(
    v0: Sequence[float],
    n: int | None = None,
    R: float = 1.0,
    numerics: NumericsSettings | None = None,
) -> BallIntegral:
    """Integrate e^{⟨v0, y⟩} over the ball of radius R in Rⁿ.

    Raises:
        ValueError: if v0 = 0, R ≤ 0, or n disagrees with len(v0).
    """
    vec = np.asarray(v0, dtype=float)
    n = len(vec) if n is None else int(n)
    if n < 1 or len(vec) != n:
        raise ValueError(f"v0 has dimension {len(vec)}, expected n={n}")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ValueError("v0 must be nonzero")
    if not R > 0:
        raise ValueError("R must be positive")

    x = norm * R
    log_exact = log_unit_ball_volume(n - 1) + n * math.log(R) + log_g_m(n - 1, x, numerics)
    log_asym = 0.5 * (n - 1) * math.log(2.0 * math.pi * R / norm) + x - math.log(norm)
    logger.debug("ball integral n=%d |v0|R=%g ratio=%g", n, x, math.exp(log_exact - log_asym))
    return BallIntegral(n, norm, float(R), log_exact, log_asym)


def shifted_cone_ball_ratio(
    v0: Sequence[float],
    x0: Sequence[float],
    half_angle: float,
    R: float,
    n_radial: int = 2000,
    n_angular: int = 1440,
) -> float:
    """Planar ratio of the cone-restricted to the full ball integral.

    Numerator: ∫ e^{⟨v0, y⟩} over ‖y‖ ≤ R with y − x0 inside the circular
    cone of the given half-angle around v0. Denominator: the same integral
    without the cone constraint, on the same polar midpoint grid.
    """
    v = np.asarray(v0, dtype=float)
    shift = np.asarray(x0, dtype=float)
    if v.shape != (2,) or shift.shape != (2,):
        raise ValueError("shifted_cone_ball_ratio works in dimension 2")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("v0 must be nonzero")
    if not 0 < half_angle < math.pi:
        raise ValueError("half_angle must lie in (0, π)")
    direction = v / norm

    dr = R / n_radial
    r = (np.arange(n_radial) + 0.5) * dr
    phi = (np.arange(n_angular) + 0.5) * (2 * math.pi / n_angular) - math.pi
    phi = phi + math.atan2(direction[1], direction[0])

    rr, pp = np.meshgrid(r, phi, indexing="ij")
    y1, y2 = rr * np.cos(pp), rr * np.sin(pp)
    # scaled by e^{−‖v0‖R} to stay in range
    weight = np.exp(v[0] * y1 + v[1] * y2 - norm * R) * rr

    d1, d2 = y1 - shift[0], y2 - shift[1]
    d_norm = np.hypot(d1, d2)
    cos_angle = np.divide(
        d1 * direction[0] + d2 * direction[1],
        d_norm,
        out=np.ones_like(d_norm),
        where=d_norm > 0,
    )
    inside = cos_angle >= math.cos(half_angle)

    full = float(weight.sum())
    restricted = float(weight[inside].sum())
    return restricted / full
