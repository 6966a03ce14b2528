"""Growth of exponential integrals over truncated shifted orthants.

For positive integer vectors m, c and a shift y, the region is
{x ≥ y componentwise, Σ c_α x_α ≤ log T} and the integrand exp(Σ m_α x_α).
With u = x − y and L = log T − Σ c_α y_α,

    value = e^{Σ m y} · ∫_{u ≥ 0, Σ c u ≤ L} e^{Σ m u} du,

and after w_α = c_α u_α the inner integral is (Π c)^{-1} ∫ over the simplex
{w ≥ 0, Σ w ≤ L} of e^{Σ r_α w_α}, r_α = m_α / c_α.

Its growth is C T^a (log T)^{b−1} with a = max r_α, b the number of α
attaining the max and C = 1 / (a (b−1)! Π c_α Π_{r_α<a} (a − r_α)).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from src.config.settings import EnumerationSettings, FittingSettings, NumericsSettings
from src.countlab.fitting import FitResult, fit_points
from src.utils.parallel import block_seeds, run_partitioned, sample_blocks
from src.utils.rationals import format_rational
from src.utils.types import RegionReport

logger = logging.getLogger(__name__)

_GRID_BUDGET = 1 << 22
GRID = "grid"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class RegionEstimate:
    m: tuple[int, ...]
    c: tuple[int, ...]
    T: float
    mode: str
    value: float
    stderr: float
    predicted_a: Fraction
    predicted_b: int
    predicted_constant: float
    shift_factor: float
    details: dict = field(default_factory=dict)

    @property
    def predicted_value(self) -> float:
        """C·shift·T^a (log T)^{b−1}; the leading term only."""
        log_t = math.log(self.T)
        if log_t <= 0:
            return 0.0
        return (
            self.predicted_constant
            * self.shift_factor
            * math.exp(float(self.predicted_a) * log_t)
            * log_t ** (self.predicted_b - 1)
        )

    def to_dict(self) -> RegionReport:
        return {
            "m": list(self.m),
            "c": list(self.c),
            "T": self.T,
            "mode": self.mode,
            "value": self.value,
            "stderr": self.stderr,
            "predicted_a": format_rational(self.predicted_a),
            "predicted_b": self.predicted_b,
            "predicted_constant": self.predicted_constant,
            "shift_factor": self.shift_factor,
            "predicted_value": self.predicted_value,
            **self.details,
        }


def _validate(m: Sequence[int], c: Sequence[int], y: Sequence[float] | None):
    m = tuple(int(v) for v in m)
    c = tuple(int(v) for v in c)
    if not m or len(m) != len(c):
        raise ValueError("m and c must be non-empty and of equal length")
    if any(v < 1 for v in m) or any(v < 1 for v in c):
        raise ValueError("all m_α and c_α must be positive integers")
    y = tuple(float(v) for v in (y if y is not None else [0.0] * len(m)))
    if len(y) != len(m):
        raise ValueError("shift y must have the same length as m")
    return m, c, y


def predicted_shape(m: Sequence[int], c: Sequence[int]) -> tuple[Fraction, int, float]:
    """(a, b, C) for the unshifted region."""
    rates = [Fraction(mi, ci) for mi, ci in zip(m, c)]
    a = max(rates)
    b = sum(1 for r in rates if r == a)
    denom = float(a) * math.factorial(b - 1) * math.prod(c)
    for r in rates:
        if r != a:
            denom *= float(a - r)
    return a, b, 1.0 / denom


def shift_factor(m: Sequence[int], c: Sequence[int], y: Sequence[float]) -> float:
    """exp(Σ m y − a Σ c y): how a shift rescales the leading constant."""
    a, _, _ = predicted_shape(m, c)
    return math.exp(sum(mi * yi for mi, yi in zip(m, y)) - float(a) * sum(ci * yi for ci, yi in zip(c, y)))


def simplex_exponential_integral(rates: Sequence[float], L: float) -> float:
    """∫_{w ≥ 0, Σw ≤ L} e^{Σ r w} dw for pairwise distinct nonzero rates.

    Divided difference of z ↦ e^{Lz} at the nodes {0, r_1, …, r_d}.
    """
    nodes = [0.0, *[float(r) for r in rates]]
    if len(set(nodes)) != len(nodes):
        raise ValueError("rates must be pairwise distinct and nonzero")
    total = 0.0
    for i, xi in enumerate(nodes):
        denom = math.prod(xi - xj for j, xj in enumerate(nodes) if j != i)
        total += math.exp(L * xi) / denom
    return total


# ---------
# Grid mode
# ---------


def _trapezoid_weights(n: int, h: float) -> np.ndarray:
    w = np.full(n + 1, h)
    w[0] = w[-1] = 0.5 * h
    return w


def _grid_scaled(rates: np.ndarray, L: float, n: int) -> float:
    """Simplex integral times e^{−aL}, a = max rate, on an n-interval grid."""
    a = float(rates.max())
    inner = float(rates[-1])
    outer = rates[:-1]
    d_outer = len(outer)
    if d_outer == 0:
        return math.expm1(inner * L) / inner * math.exp(-a * L)

    h = L / n
    nodes = np.linspace(0.0, L, n + 1)
    weights = _trapezoid_weights(n, h)
    grids = np.meshgrid(*([nodes] * d_outer), indexing="ij")
    wgrid = np.meshgrid(*([weights] * d_outer), indexing="ij")
    used = np.zeros_like(grids[0])
    exponent = np.zeros_like(grids[0])
    cell = np.ones_like(grids[0])
    for g, wg, r in zip(grids, wgrid, outer):
        used += g
        exponent += r * g
        cell *= wg
    remaining = np.clip(L - used, 0.0, None)
    # innermost coordinate integrated exactly: (e^{r rem} − 1)/r
    inner_part = np.expm1(inner * remaining) / inner
    values = np.exp(exponent - a * L) * inner_part
    return float((values * cell).sum())


def _grid_estimate(rates: np.ndarray, L: float, numerics: NumericsSettings) -> tuple[float, float, int]:
    d_outer = len(rates) - 1
    if d_outer == 0:
        return _grid_scaled(rates, L, 1), 0.0, 1
    n = 32
    previous = _grid_scaled(rates, L, n)
    while True:
        nxt = 2 * n
        if nxt > numerics.grid_max_points or (nxt + 1) ** d_outer > _GRID_BUDGET:
            logger.warning("grid refinement stopped at %d points per axis", n)
            return previous, abs(previous) * numerics.grid_rel_tol, n
        current = _grid_scaled(rates, L, nxt)
        change = abs(current - previous)
        logger.debug("grid n=%d value=%g change=%g", nxt, current, change)
        n = nxt
        if change <= numerics.grid_rel_tol * abs(current):
            return current, change, n
        previous = current


# ----------------
# Monte-Carlo mode
# ----------------


def _mc_block(
    rates: tuple[float, ...], L: float, count: int, seed: np.random.SeedSequence
) -> tuple[float, float, int]:
    """Sum and sum of squares of importance weights (scaled by e^{−aL})."""
    rng = np.random.default_rng(seed)
    r = np.asarray(rates)
    a = float(r.max())
    d = len(r)
    # t = L − s follows Exp(a) truncated to [0, L]
    norm = -math.expm1(-a * L)
    t = -np.log1p(-rng.random(count) * norm) / a
    s = L - t
    omega = rng.dirichlet(np.ones(d), size=count)
    log_w = (d - 1) * np.log(np.maximum(s, 1e-300)) + s * (omega @ r) - a * s
    weights = np.exp(log_w) * norm / (a * math.factorial(d - 1))
    return float(weights.sum()), float((weights**2).sum()), count


def _mc_estimate(
    rates: np.ndarray,
    L: float,
    samples: int,
    seed: int,
    enumeration: EnumerationSettings,
    jobs: int,
) -> tuple[float, float]:
    blocks = sample_blocks(samples, enumeration.block_size)
    seeds = block_seeds(seed, len(blocks))
    tasks = [(tuple(float(x) for x in rates), L, count, s) for (_, count), s in zip(blocks, seeds)]
    parts = run_partitioned(_mc_block, tasks, jobs)
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


def cone_region_estimate(
    m: Sequence[int],
    c: Sequence[int],
    T: float,
    y: Sequence[float] | None = None,
    mode: str = GRID,
    samples: int = 100_000,
    seed: int = 0,
    numerics: NumericsSettings | None = None,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> RegionEstimate:
    """Estimate ∫ exp(Σ m x) over {x ≥ y, Σ c x ≤ log T}.

    Raises:
        ValueError: for non-positive coefficients, mismatched lengths or an
            unknown mode.
    """
    m, c, y = _validate(m, c, y)
    numerics = numerics or NumericsSettings()
    enumeration = enumeration or EnumerationSettings()
    a, b, const = predicted_shape(m, c)
    shift = shift_factor(m, c, y)

    def result(value: float, stderr: float, **details) -> RegionEstimate:
        return RegionEstimate(m, c, float(T), mode, value, stderr, a, b, const, shift, details)

    if mode not in (GRID, MONTE_CARLO):
        raise ValueError(f"Unknown mode {mode!r}; expected 'grid' or 'monte_carlo'")
    if T <= 1:
        return result(0.0, 0.0)
    L = math.log(T) - sum(ci * yi for ci, yi in zip(c, y))
    if L <= 0:
        return result(0.0, 0.0)

    rates = np.array([mi / ci for mi, ci in zip(m, c)], dtype=float)
    # scale = e^{Σ m y + aL} / Π c
    log_scale = sum(mi * yi for mi, yi in zip(m, y)) + float(a) * L - math.log(math.prod(c))
    scale = math.exp(log_scale)

    if mode == GRID:
        scaled, err, n = _grid_estimate(rates, L, numerics)
        return result(scaled * scale, err * scale, grid_points=n)

    if samples < 2:
        raise ValueError("monte_carlo mode needs at least 2 samples")
    mean, stderr = _mc_estimate(rates, L, samples, seed, enumeration, jobs)
    return result(mean * scale, stderr * scale, samples=samples, seed=seed)


def region_sweep(
    m: Sequence[int],
    c: Sequence[int],
    Ts: Sequence[float],
    y: Sequence[float] | None = None,
    mode: str = GRID,
    fitting: FittingSettings | None = None,
    **kwargs,
) -> tuple[list[RegionEstimate], FitResult]:
    """Estimates over a T grid plus the (a, b) fitted from their growth."""
    estimates = [cone_region_estimate(m, c, T, y, mode, **kwargs) for T in Ts]
    fit = fit_points(
        [e.T for e in estimates], [e.value for e in estimates], "power_log", fitting
    )
    return estimates, fit
