"""The integrals g_m(x) = ∫_{−1}^{1} (1 − s²)^{m/2} e^{xs} ds, m ≥ −1.

Two evaluation regimes:

- x ≥ max(2m, 8): upward recursion
      x² g_m = −m(m−1) g_{m−2} + m(m−2) g_{m−4}   (m ≥ 3)
  from g_{−1} = π I_0, g_0 = 2 sinh(x)/x, g_1 = (π/x) I_1,
  g_2 = 4 cosh(x)/x² − 4 sinh(x)/x³.
- otherwise: the positive series Σ_k x^{2k}/(2k)! · B(k + 1/2, m/2 + 1).

All work is done on e^{−x} g_m, so ``log_g_m`` is finite for any x > 0.
"""

from __future__ import annotations

import logging
import math

from src.config.settings import NumericsSettings

from .bessel import i0e, i1e

logger = logging.getLogger(__name__)

_DEFAULTS = NumericsSettings()


def _check(m: int, x: float) -> None:
    if int(m) != m or m < -1:
        raise ValueError(f"m must be an integer ≥ −1, got {m}")
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")


def _base_scaled(m: int, x: float, crossover: float) -> float:
    if m == -1:
        return math.pi * i0e(x, crossover)
    if m == 0:
        return -math.expm1(-2.0 * x) / x
    if m == 1:
        return math.pi * i1e(x, crossover) / x
    if m == 2:
        e2 = math.exp(-2.0 * x)
        return 2.0 * (1.0 + e2) / x**2 + 2.0 * math.expm1(-2.0 * x) / x**3
    raise ValueError(f"no closed form for m={m}")


def _recursion_scaled(m: int, x: float, crossover: float) -> float:
    values = {k: _base_scaled(k, x, crossover) for k in (-1, 0, 1, 2)}
    x2 = x * x
    for k in range(3, m + 1):
        values[k] = (-k * (k - 1) * values[k - 2] + k * (k - 2) * values[k - 4]) / x2
    return values[m]


def _series_scaled(m: int, x: float, max_terms: int) -> float:
    half_m = 0.5 * m
    log_b0 = math.lgamma(0.5) + math.lgamma(half_m + 1.0) - math.lgamma(half_m + 1.5)
    term = math.exp(log_b0 - x)
    total = term
    x2 = x * x
    for k in range(max_terms):
        term *= x2 / ((2 * k + 1) * (2 * k + 2)) * (k + 0.5) / (k + half_m + 1.5)
        total += term
        if k > x and term < 1e-17 * total:
            return total
    logger.warning("g_m series did not converge in %d terms (m=%d, x=%g)", max_terms, m, x)
    return total


def use_recursion(m: int, x: float) -> bool:
    return x >= max(2 * m, 8)


def scaled_g_m(m: int, x: float, numerics: NumericsSettings | None = None) -> float:
    """e^{−x} g_m(x)."""
    _check(m, x)
    numerics = numerics or _DEFAULTS
    m = int(m)
    if m <= 2 and x >= 8:
        return _base_scaled(m, x, numerics.bessel_crossover)
    if use_recursion(m, x):
        return _recursion_scaled(m, x, numerics.bessel_crossover)
    return _series_scaled(m, x, numerics.gm_series_max_terms)


def log_g_m(m: int, x: float, numerics: NumericsSettings | None = None) -> float:
    """log g_m(x); finite beyond the float range of g_m itself."""
    return x + math.log(scaled_g_m(m, x, numerics))


def g_m(m: int, x: float, numerics: NumericsSettings | None = None) -> float:
    """g_m(x).

    Raises:
        ValueError: if m < −1 or x ≤ 0.
        OverflowError: when the value exceeds the float range; use ``log_g_m``.
    """
    scaled = scaled_g_m(m, x, numerics)
    try:
        return math.exp(x) * scaled
    except OverflowError as e:
        raise OverflowError(f"g_{m}({x}) overflows; use log_g_m") from e


def varpi(m: int) -> int:
    """Π_{0 ≤ k < m/2} (m − 2k); 1 for m ≤ 0."""
    out = 1
    k = 0
    while k < m / 2:
        out *= m - 2 * k
        k += 1
    return out


def log_normalized_g_m(m: int, x: float, numerics: NumericsSettings | None = None) -> float:
    """log ḡ_m(x) with ḡ_m = x^m g_m / ϖ_m.

    ḡ satisfies ḡ_m = −(m−1) ḡ_{m−2} + x² ḡ_{m−4}.
    """
    return m * math.log(x) + log_g_m(m, x, numerics) - math.log(varpi(m))


def normalized_g_m(m: int, x: float, numerics: NumericsSettings | None = None) -> float:
    return math.exp(log_normalized_g_m(m, x, numerics))


def log_normalized_leading(m: int, x: float) -> float:
    """Leading term of log ḡ_m(x) as x → ∞.

    ḡ_m ~ x^{(m−2)/2} e^x for even m and sqrt(π/2) x^{(m−2)/2} e^x for odd m;
    by residue mod 4 this is x^{2k−1}, sqrt(π/2) x^{2k−1/2}, x^{2k},
    sqrt(π/2) x^{2k+1/2} for m = 4k, 4k+1, 4k+2, 4k+3.
    """
    const = 0.0 if m % 2 == 0 else 0.5 * math.log(math.pi / 2)
    return const + 0.5 * (m - 2) * math.log(x) + x
