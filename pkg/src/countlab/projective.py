"""Rational points of bounded height on projective space.

H([v]) = ‖v‖ for a primitive integral representative v, so the count is
#{primitive v ∈ Zⁿ : ‖v‖ ≤ T} / 2.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from src.config.settings import EnumerationSettings
from src.utils.errors import EnumerationLimitError
from src.utils.parallel import merge_sum, run_partitioned, split_range

from .fitting import CountSeries
from .lattice import height_bound, primitive_ball_count

logger = logging.getLogger(__name__)

SIEVE = "sieve"
EXHAUSTIVE = "exhaustive"
STRATEGIES = (SIEVE, EXHAUSTIVE)


def _exhaustive_slice(n: int, X: int, lo: int, hi: int) -> int:
    """Primitive vectors (both signs) with first coordinate in [lo, hi)."""
    r = math.isqrt(X)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    if n == 1:
        return sum(1 for x in range(lo, hi) if abs(x) == 1)
    tail = np.stack(np.meshgrid(*([axis] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1)
    tail_norm = (tail * tail).sum(axis=1)
    tail_gcd = np.gcd.reduce(tail, axis=1)
    count = 0
    for x in range(lo, hi):
        keep = (tail_norm <= X - x * x) & (np.gcd(tail_gcd, abs(x)) == 1)
        count += int(keep.sum())
    return count


def count_projective(
    n: int,
    T: float,
    strategy: str = SIEVE,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> int:
    """#{[v] ∈ P^{n−1}(Q) : H([v]) ≤ T}.

    ``sieve`` inverts lattice-ball counts with the Möbius function;
    ``exhaustive`` walks the box slice by slice with a gcd filter. Both
    return the same integer.

    Raises:
        ValueError: for n < 2 or an unknown strategy.
        EnumerationLimitError: if an exhaustive slice exceeds the budget.
    """
    if n < 2:
        raise ValueError(f"dimension n must be at least 2, got {n}")
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if T < 1:
        return 0
    X = height_bound(T)

    if strategy == SIEVE:
        total = primitive_ball_count(n, X)
    else:
        enumeration = enumeration or EnumerationSettings()
        r = math.isqrt(X)
        per_slice = (2 * r + 1) ** (n - 1)
        if per_slice > enumeration.max_candidates:
            raise EnumerationLimitError(
                f"exhaustive count needs {per_slice} candidates per slice "
                f"(limit {enumeration.max_candidates}); use the sieve strategy"
            )
        tasks = [(n, X, lo, hi) for lo, hi in split_range(-r, r + 1, max(jobs, 1))]
        total = merge_sum(run_partitioned(_exhaustive_slice, tasks, jobs))

    logger.debug("count_projective n=%d T=%g (%s): %d", n, T, strategy, total // 2)
    return total // 2


def projective_series(
    n: int,
    Ts: Sequence[float],
    strategy: str = SIEVE,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> CountSeries:
    """Counts over a T grid; the predicted growth is T^n."""
    points = [(float(T), count_projective(n, T, strategy, enumeration, jobs)) for T in Ts]
    return CountSeries.from_pairs(points, predicted={"a": str(n), "b": 1})
