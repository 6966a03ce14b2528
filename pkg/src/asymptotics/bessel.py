"""Modified Bessel functions I_0 and I_1.

Below the crossover (default x = 15) the defining power series
I_ν(x) = Σ (x/2)^{2k+ν} / (k! (k+ν)!) is summed; all terms are positive.
Above it the large-argument expansion

    I_ν(x) ~ e^x / sqrt(2πx) · Σ_k (−1)^k a_k(ν) / x^k,
    a_k(ν) = (4ν² − 1)(4ν² − 9)…(4ν² − (2k−1)²) / (k! 8^k)

is truncated at its smallest term. Both branches return the exponentially
scaled value e^{−x} I_ν(x) so callers can work in log space.
"""

from __future__ import annotations

import math

DEFAULT_CROSSOVER = 15.0
_SERIES_MAX_TERMS = 400


def _series_scaled(nu: int, x: float) -> float:
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - x - math.lgamma(nu + 1)) if x > 0 else float(nu == 0)
    total = term
    k = 0
    while k < _SERIES_MAX_TERMS:
        k += 1
        term *= half * half / (k * (k + nu))
        total += term
        if term == 0.0 or term < 1e-17 * total:
            break
    return total


def _asymptotic_scaled(nu: int, x: float) -> float:
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(term) or nxt == 0.0:
            break
        term = nxt
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_scaled(nu: int, x: float, crossover: float = DEFAULT_CROSSOVER) -> float:
    """e^{−x} I_ν(x) for ν ∈ {0, 1} and x ≥ 0."""
    if nu not in (0, 1):
        raise ValueError(f"Only orders 0 and 1 are implemented, got {nu}")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x < crossover:
        return _series_scaled(nu, x)
    return _asymptotic_scaled(nu, x)


def i0e(x: float, crossover: float = DEFAULT_CROSSOVER) -> float:
    return bessel_scaled(0, x, crossover)


def i1e(x: float, crossover: float = DEFAULT_CROSSOVER) -> float:
    return bessel_scaled(1, x, crossover)


def i0(x: float, crossover: float = DEFAULT_CROSSOVER) -> float:
    return math.exp(x) * i0e(x, crossover)


def i1(x: float, crossover: float = DEFAULT_CROSSOVER) -> float:
    return math.exp(x) * i1e(x, crossover)

