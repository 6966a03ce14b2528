"""Growth-law fitting for count series.

Models (least squares in log coordinates):

- ``power``:       log N = log C + a log T
- ``power_log``:   log N = log C + a log T + (b − 1) log log T
- ``exponential``: log N = log C + c R

For ``power_log`` the exponent a is read from the top dyadic window of the
series (see ``top_dyadic_window``), snapped to a nearby small-denominator
rational when close enough, and b − 1 is then the slope of log N − a log T
against log log T.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from scipy import stats

from src.config.settings import FittingSettings
from src.utils.rationals import format_rational
from src.utils.types import FitReport, SeriesReport

logger = logging.getLogger(__name__)

MODELS = ("power", "power_log", "exponential")


class FitError(ValueError):
    """Raised when a series does not meet the regression preconditions."""


@dataclass(frozen=True)
class FitResult:
    model: str
    exponents: dict[str, float]
    stderrs: dict[str, float]
    n_points: int
    window: tuple[float, float]
    snapped_a: Fraction | None = None

    def to_dict(self) -> FitReport:
        return {
            "model": self.model,
            "exponents": dict(self.exponents),
            "stderrs": dict(self.stderrs),
            "n_points": self.n_points,
            "window": list(self.window),
            "snapped_a": format_rational(self.snapped_a) if self.snapped_a is not None else None,
        }


@dataclass(frozen=True)
class CountSeries:
    """(x, N) pairs; x is T for height counts and R for radius counts."""

    points: tuple[tuple[float, float], ...]
    x_label: str = "T"
    fit: FitResult | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]], x_label: str = "T", **extra) -> "CountSeries":
        return cls(tuple((float(x), y) for x, y in pairs), x_label, None, extra)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=float)

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=float)

    def is_monotone(self) -> bool:
        ys = self.ys
        return bool(np.all(np.diff(ys) >= 0))

    def with_fit(self, fit: FitResult) -> "CountSeries":
        return CountSeries(self.points, self.x_label, fit, dict(self.extra))

    def to_dict(self) -> SeriesReport:
        return {
            "x_label": self.x_label,
            "points": [[x, y] for x, y in self.points],
            "fit": self.fit.to_dict() if self.fit else None,
            **self.extra,
        }


def _check(xs: np.ndarray, ys: np.ndarray, model: str, settings: FittingSettings) -> None:
    if model not in MODELS:
        raise FitError(f"Unknown model {model!r}; expected one of {MODELS}")
    if len(xs) < settings.min_points:
        raise FitError(f"Need at least {settings.min_points} points, got {len(xs)}")
    if np.any(np.diff(xs) <= 0):
        raise FitError("x values must be strictly increasing")
    if np.any(ys <= 0):
        raise FitError("counts must be positive to fit in log space")
    if model != "exponential" and np.any(xs <= 1):
        raise FitError("T values must exceed 1 for power models")


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float]:
    res = stats.linregress(x, y)
    return float(res.slope), float(res.intercept), float(res.stderr), float(res.intercept_stderr)


def top_dyadic_window(xs: Sequence[float], min_points: int = 3) -> np.ndarray:
    """Mask of the points in [x_max / 2^k, x_max].

    k is the largest integer with 2^k ≤ sqrt(x_max / x_min), so the window is
    the widest dyadic range inside the upper half of the log-range; it is
    widened one octave at a time until it holds ``min_points`` points.
    """
    xs = np.asarray(xs, dtype=float)
    top = xs[-1]
    k = max(0, math.floor(0.5 * math.log2(top / xs[0])))
    needed = min(min_points, len(xs))
    while True:
        mask = xs >= top / 2.0**k * (1 - 1e-12)
        if mask.sum() >= needed:
            return mask
        k += 1


def snap_exponent(a: float, settings: FittingSettings) -> Fraction | None:
    """The rational of smallest denominator within the tolerance of ``a``."""
    for q in range(1, settings.snap_max_denominator + 1):
        candidate = Fraction(round(a * q), q)
        if abs(float(candidate) - a) <= settings.snap_tolerance:
            return candidate
    logger.warning("exponent %.4f not within %.2f of a small rational", a, settings.snap_tolerance)
    return None


def fit_points(
    xs: Sequence[float],
    ys: Sequence[float],
    model: str,
    settings: FittingSettings | None = None,
    a: Fraction | float | None = None,
) -> FitResult:
    """Fit ``model`` to the points; see module docstring.

    Args:
        a: for ``power_log``, a known exponent that skips the top-window fit.

    Raises:
        FitError: on too few points, non-increasing x or non-positive counts.
    """
    settings = settings or FittingSettings()
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    _check(xs, ys, model, settings)
    log_y = np.log(ys)
    window = (float(xs[0]), float(xs[-1]))

    if model == "exponential":
        slope, icpt, se, se_i = _ols(xs, log_y)
        return FitResult(model, {"c": slope, "log_C": icpt}, {"c": se, "log_C": se_i}, len(xs), window)

    log_x = np.log(xs)
    if model == "power":
        slope, icpt, se, se_i = _ols(log_x, log_y)
        return FitResult(model, {"a": slope, "log_C": icpt}, {"a": se, "log_C": se_i}, len(xs), window)

    snapped = None
    if a is None:
        top = top_dyadic_window(xs)
        raw_a, _, raw_se, _ = _ols(log_x[top], log_y[top])
        snapped = snap_exponent(raw_a, settings)
        a_value = float(snapped) if snapped is not None else raw_a
        a_se = raw_se
        window = (float(xs[top][0]), float(xs[-1]))
        logger.debug("power_log: raw a=%.4f snapped=%s", raw_a, snapped)
    else:
        a_value, a_se = float(a), 0.0
        snapped = Fraction(a) if isinstance(a, (int, Fraction)) else None

    residual = log_y - a_value * log_x
    slope, icpt, se, se_i = _ols(np.log(log_x), residual)
    return FitResult(
        model,
        {"a": a_value, "b": slope + 1.0, "log_C": icpt},
        {"a": a_se, "b": se, "log_C": se_i},
        len(xs),
        window,
        snapped,
    )


def fit_growth(
    series: CountSeries,
    model: str,
    settings: FittingSettings | None = None,
    a: Fraction | float | None = None,
) -> CountSeries:
    """Fit ``series`` and return it with the fit attached."""
    fit = fit_points(series.xs, series.ys, model, settings, a)
    logger.info(
        "fit %s: %s",
        model,
        ", ".join(f"{k}={v:.4g}±{fit.stderrs[k]:.2g}" for k, v in fit.exponents.items()),
    )
    return series.with_fit(fit)


def dyadic_grid(start: float, stop: float) -> list[float]:
    """start, 2·start, 4·start, … up to and including ``stop``."""
    if start <= 0 or stop < start:
        raise ValueError("dyadic grid needs 0 < start ≤ stop")
    out, value = [], float(start)
    while value <= stop * (1 + 1e-12):
        out.append(value)
        value *= 2
    return out


def log_grid(start: float, stop: float, count: int) -> list[float]:
    if count < 2 or start <= 0 or stop <= start:
        raise ValueError("log grid needs count ≥ 2 and 0 < start < stop")
    return [float(v) for v in np.exp(np.linspace(math.log(start), math.log(stop), count))]


def linear_grid(start: float, stop: float, step: float) -> list[float]:
    """start, start + step, … up to and including ``stop``."""
    if step <= 0 or start < 0 or stop < start:
        raise ValueError("linear grid needs step > 0 and 0 ≤ start ≤ stop")
    count = math.floor((stop - start) / step * (1 + 1e-12)) + 1
    return [start + k * step for k in range(count)]
