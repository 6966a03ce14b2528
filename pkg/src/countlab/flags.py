"""Flags (line ⊂ plane) in Q³ of bounded height.

A flag is a pair of primitive v, w ∈ Z³ (each up to sign) with v·w = 0: v
spans the line and w is the normal of the plane. For χ = c1 λ1 + c2 λ2 the
height is H(v)^{c1} H(w)^{c2}, compared in integers as

    (|v|²)^{c1} (|w|²)^{c2} ≤ floor(T²).

Inner loops walk the rank-2 lattice v⊥ ∩ Z³ in a Gauss-reduced basis; a
vector of that lattice is primitive in Z³ iff its coordinates in the basis
are coprime.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sympy.core.intfunc import igcdex

from src.config.settings import EnumerationSettings
from src.utils.errors import EnumerationLimitError
from src.utils.parallel import merge_sum, run_partitioned, split_range

from .fitting import CountSeries
from .lattice import ceil_root, floor_root, height_bound, primitive_vectors_3d

logger = logging.getLogger(__name__)

V_OUTER = "v_outer"
W_OUTER = "w_outer"
BALANCED = "balanced"
STRATEGIES = (V_OUTER, W_OUTER, BALANCED)

Vec3 = tuple[int, int, int]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def orthogonal_basis(v: Sequence[int]) -> tuple[Vec3, Vec3]:
    """A basis of v⊥ ∩ Z³ for primitive v, with b1 × b2 = ±v."""
    v1, v2, v3 = (int(x) for x in v)
    if v1 == 0 and v2 == 0:
        if abs(v3) != 1:
            raise ValueError(f"{tuple(v)} is not primitive")
        return (1, 0, 0), (0, 1, 0)
    p, q, g = igcdex(v1, v2)
    p, q, g = int(p), int(q), int(g)
    b1 = (v2 // g, -v1 // g, 0)
    b2 = (p * v3, q * v3, -g)
    return b1, b2


def gauss_reduce(b1: Sequence[int], b2: Sequence[int]) -> tuple[Vec3, Vec3]:
    """Lagrange–Gauss reduction: |b1| ≤ |b2| and |2 b1·b2| ≤ |b1|²."""
    b1, b2 = tuple(int(x) for x in b1), tuple(int(x) for x in b2)
    while True:
        n1, n2 = _dot(b1, b1), _dot(b2, b2)
        if n2 < n1:
            b1, b2 = b2, b1
            n1 = n2
        d = _dot(b1, b2)
        # nearest integer to d / n1
        mu = (2 * d + n1) // (2 * n1)
        if mu == 0:
            return b1, b2
        b2 = tuple(y - mu * x for x, y in zip(b1, b2))


def _count_plane(a: int, b: int, c: int, lo: int, hi: int) -> int:
    """#{(x, y) coprime, up to sign : lo ≤ a x² + 2bxy + c y² ≤ hi}.

    The form is positive definite with discriminant D = ac − b² > 0.
    """
    if hi < max(lo, 1):
        return 0
    count = 1 if lo <= a <= hi else 0  # (1, 0)
    D = a * c - b * b
    y_max = math.isqrt(hi * a // D)
    for y in range(1, y_max + 1):
        disc = a * hi - D * y * y
        if disc < 0:
            continue
        s = math.isqrt(disc)
        # a x + b y ∈ [−s, s], widened by one and filtered exactly
        x_lo = (-b * y - s) // a - 1
        x_hi = (-b * y + s) // a + 1
        xs = np.arange(x_lo, x_hi + 1, dtype=np.int64)
        q = a * xs * xs + 2 * b * xs * y + c * y * y
        keep = (q >= lo) & (q <= hi) & (np.gcd(xs, y) == 1)
        count += int(keep.sum())
    return count


def _count_in_orthogonal(v: Sequence[int], lo: int, hi: int) -> int:
    """Primitive w ⊥ v up to sign with lo ≤ |w|² ≤ hi."""
    b1, b2 = gauss_reduce(*orthogonal_basis(v))
    return _count_plane(_dot(b1, b1), _dot(b1, b2), _dot(b2, b2), lo, hi)


def _outer_chunk(
    vectors: np.ndarray,
    norms: np.ndarray,
    c_outer: int,
    c_inner: int,
    X: int,
    balanced: bool,
    strict: bool,
) -> int:
    """Sum of inner counts for a chunk of outer vectors.

    Unbalanced: inner norms n with f_out · n^{c_inner} ≤ X.
    Balanced: additionally f_out ≤ f_in (or f_out < f_in when ``strict``).
    """
    total = 0
    for vec, nv in zip(vectors, norms):
        f_out = int(nv) ** c_outer
        hi = floor_root(X // f_out, c_inner)
        lo = 1
        if balanced:
            lo = ceil_root(f_out + (1 if strict else 0), c_inner)
        total += _count_in_orthogonal(tuple(int(x) for x in vec), lo, hi)
    return total


def _outer_sum(
    c_outer: int,
    c_inner: int,
    X: int,
    outer_limit: int,
    balanced: bool,
    strict: bool,
    enumeration: EnumerationSettings,
    jobs: int,
) -> int:
    r = math.isqrt(outer_limit)
    candidates = (2 * r + 1) ** 2
    if candidates > enumeration.max_candidates:
        raise EnumerationLimitError(
            f"outer enumeration needs {candidates} candidates per slice "
            f"(limit {enumeration.max_candidates}); try the balanced strategy"
        )
    vectors, norms = primitive_vectors_3d(outer_limit)
    tasks = [
        (vectors[lo:hi], norms[lo:hi], c_outer, c_inner, X, balanced, strict)
        for lo, hi in split_range(0, len(vectors), max(jobs, 1))
    ]
    return merge_sum(run_partitioned(_outer_chunk, tasks, jobs))


def count_flags_sl3(
    c1: int,
    c2: int,
    T: float,
    strategy: str = BALANCED,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> int:
    """#{flags in Q³ : H(line)^{c1} H(plane)^{c2} ≤ T}.

    ``v_outer`` and ``w_outer`` loop over one factor and count the other in
    its orthogonal lattice; ``balanced`` always loops over the factor of
    smaller height. All three return the same integer.

    Raises:
        ValueError: for non-positive exponents or an unknown strategy.
        EnumerationLimitError: if the outer box exceeds the budget.
    """
    if int(c1) != c1 or int(c2) != c2 or c1 < 1 or c2 < 1:
        raise ValueError(f"c1, c2 must be positive integers, got {c1}, {c2}")
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if T < 1:
        return 0
    c1, c2 = int(c1), int(c2)
    enumeration = enumeration or EnumerationSettings()
    X = height_bound(T)

    if strategy == V_OUTER:
        total = _outer_sum(c1, c2, X, floor_root(X, c1), False, False, enumeration, jobs)
    elif strategy == W_OUTER:
        total = _outer_sum(c2, c1, X, floor_root(X, c2), False, False, enumeration, jobs)
    else:
        # f_v ≤ f_w forces f_v² ≤ X, and symmetrically for the strict half
        root = floor_root(X, 2)
        total = _outer_sum(c1, c2, X, floor_root(root, c1), True, False, enumeration, jobs)
        total += _outer_sum(c2, c1, X, floor_root(root, c2), True, True, enumeration, jobs)

    logger.debug("count_flags_sl3 c=(%d,%d) T=%g (%s): %d", c1, c2, T, strategy, total)
    return total


def flags_series(
    c1: int,
    c2: int,
    Ts: Sequence[float],
    strategy: str = BALANCED,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> CountSeries:
    points = [(float(T), count_flags_sl3(c1, c2, T, strategy, enumeration, jobs)) for T in Ts]
    return CountSeries.from_pairs(points, c=[c1, c2])


@dataclass(frozen=True)
class TensorCheck:
    v: Vec3
    w: Vec3
    norm_squared: int
    product_norm_squared: int
    primitive: bool

    @property
    def matches(self) -> bool:
        return self.primitive and self.norm_squared == self.product_norm_squared


def tensor_height_check(v: Sequence[int], w: Sequence[int], c1: int, c2: int) -> TensorCheck:
    """Compare the tensor image v^{⊗c1} ⊗ w^{⊗c2} with H(v)^{c1} H(w)^{c2}."""
    v = tuple(int(x) for x in v)
    w = tuple(int(x) for x in w)
    entries = [1]
    for factor in [v] * c1 + [w] * c2:
        entries = [x * y for x in entries for y in factor]
    norm_squared = sum(x * x for x in entries)
    product = _dot(v, v) ** c1 * _dot(w, w) ** c2
    return TensorCheck(v, w, norm_squared, product, math.gcd(*entries) == 1)


def random_flags(count: int, bound: int, seed: int = 0) -> list[tuple[Vec3, Vec3]]:
    """``count`` flags with v drawn from the box [−bound, bound]³."""
    rng = np.random.default_rng(seed)
    flags: list[tuple[Vec3, Vec3]] = []
    while len(flags) < count:
        v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=3))
        if math.gcd(*v) != 1:
            continue
        b1, b2 = gauss_reduce(*orthogonal_basis(v))
        x, y = (int(t) for t in rng.integers(-bound, bound + 1, size=2))
        if math.gcd(x, y) != 1:
            continue
        w = tuple(x * p + y * q for p, q in zip(b1, b2))
        flags.append((v, w))
    return flags
