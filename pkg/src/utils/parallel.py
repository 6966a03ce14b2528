"""Partitioned execution helpers.

Two contracts are supported:

- Enumerations split an integer range into contiguous chunks and merge the
  per-chunk results with an associative function (integer addition).
- Simulations split ``n`` samples into fixed-size blocks; block ``i`` always
  draws from the ``i``-th child of ``SeedSequence(seed)``, so results do not
  depend on how many workers ran the blocks.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")


def split_range(start: int, stop: int, parts: int) -> list[tuple[int, int]]:
    """Split ``[start, stop)`` into at most ``parts`` contiguous ranges."""
    if stop <= start:
        return []
    parts = max(1, min(parts, stop - start))
    bounds = np.linspace(start, stop, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def sample_blocks(n: int, block_size: int) -> list[tuple[int, int]]:
    """Return ``(offset, count)`` pairs covering ``n`` samples."""
    return [(off, min(block_size, n - off)) for off in range(0, n, block_size)]


def block_seeds(seed: int, n_blocks: int) -> list[np.random.SeedSequence]:
    """Child seed sequences, one per block, derived from ``seed``."""
    return np.random.SeedSequence(seed).spawn(n_blocks)


def run_partitioned(
    func: Callable[..., T],
    tasks: Sequence[tuple],
    jobs: int = 1,
) -> list[T]:
    """Run ``func(*task)`` for every task, in order, on ``jobs`` processes.

    ``func`` must be a module-level function so it can be pickled.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [func(*task) for task in tasks]
    logger.debug("Running %d tasks on %d processes", len(tasks), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(func, *task) for task in tasks]
        return [f.result() for f in futures]


def merge_sum(values: Iterable[int]) -> int:
    return sum(values, 0)
