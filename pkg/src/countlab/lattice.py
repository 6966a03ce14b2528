"""Integer helpers for exact lattice-point counting.

All norms are squared Euclidean norms, kept as integers so that height
comparisons never go through floating point.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from sympy import integer_nthroot
from sympy.ntheory import mobius


def isqrt_array(values: np.ndarray) -> np.ndarray:
    """Elementwise floor square root of a non-negative int64 array."""
    values = np.asarray(values, dtype=np.int64)
    roots = np.floor(np.sqrt(values.astype(np.float64))).astype(np.int64)
    roots -= (roots * roots > values).astype(np.int64)
    roots += ((roots + 1) * (roots + 1) <= values).astype(np.int64)
    return roots


def floor_root(value: int, k: int) -> int:
    """Largest r ≥ 0 with r^k ≤ value (0 for negative ``value``)."""
    if value < 0:
        return 0
    return int(integer_nthroot(int(value), k)[0])


def ceil_root(value: int, k: int) -> int:
    """Smallest r ≥ 0 with r^k ≥ value."""
    if value <= 0:
        return 0
    root, exact = integer_nthroot(int(value), k)
    return int(root) if exact else int(root) + 1


def height_bound(T: float) -> int:
    """floor(T²): H(v) ≤ T ⟺ |v|² ≤ floor(T²) for integral v."""
    if T < 0:
        return -1
    return math.floor(T * T + 1e-9)


def lattice_ball_count(n: int, X: int) -> int:
    """#{v ∈ Zⁿ : |v|² ≤ X}, zero vector included."""
    if X < 0:
        return 0
    if n == 1:
        return 2 * math.isqrt(X) + 1
    r = math.isqrt(X)
    xs = np.arange(-r, r + 1, dtype=np.int64)
    rest = X - xs * xs
    if n == 2:
        return int((2 * isqrt_array(rest) + 1).sum())
    return sum(lattice_ball_count(n - 1, int(y)) for y in rest)


@lru_cache(maxsize=None)
def mobius_value(d: int) -> int:
    return int(mobius(d))


def primitive_ball_count(n: int, X: int) -> int:
    """#{primitive v ∈ Zⁿ : |v|² ≤ X} by Möbius inversion (both signs)."""
    total = 0
    for d in range(1, math.isqrt(max(X, 0)) + 1):
        mu = mobius_value(d)
        if mu:
            total += mu * (lattice_ball_count(n, X // (d * d)) - 1)
    return total


def primitive_vectors_3d(X: int) -> tuple[np.ndarray, np.ndarray]:
    """Primitive v ∈ Z³ with |v|² ≤ X, one per ± pair, and their norms.

    Rows come out sorted by first coordinate, then lexicographically.
    """
    r = math.isqrt(max(X, 0))
    axis = np.arange(-r, r + 1, dtype=np.int64)
    yy, zz = np.meshgrid(axis, axis, indexing="ij")
    yy, zz = yy.ravel(), zz.ravel()
    tail_norm = yy * yy + zz * zz
    tail_gcd = np.gcd(yy, zz)
    chunks, norms = [], []
    for x in range(0, r + 1):
        norm = x * x + tail_norm
        keep = (norm <= X) & (np.gcd(tail_gcd, x) == 1)
        if x == 0:
            # sign fixed by (y, z) when x = 0
            keep &= (yy > 0) | ((yy == 0) & (zz > 0))
        sel = np.flatnonzero(keep)
        chunks.append(np.column_stack([np.full(len(sel), x, dtype=np.int64), yy[sel], zz[sel]]))
        norms.append(norm[sel])
    return np.concatenate(chunks), np.concatenate(norms)
