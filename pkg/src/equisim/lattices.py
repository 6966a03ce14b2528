"""Unimodular lattices in R³: translates a_t·u·Z³ and greedy reduction.

Bases are stored column-wise. The greedy reduction repeatedly replaces the
longest vector by its distance to the closest point of the plane lattice
spanned by the other two; in dimension 3 the result is Minkowski-reduced,
so its first column is a shortest nonzero vector.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from src.config.settings import EnumerationSettings, SimulationSettings
from src.rootsys.datum import CochVec
from src.utils.errors import EnumerationLimitError
from src.utils.parallel import block_seeds, run_partitioned, sample_blocks

logger = logging.getLogger(__name__)

_DET_TOL = 1e-9


def _gauss_reduce_2(b1: np.ndarray, b2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    while True:
        if b2 @ b2 < b1 @ b1:
            b1, b2 = b2, b1
        mu = round(float(b1 @ b2) / float(b1 @ b1))
        if mu == 0:
            return b1, b2
        b2 = b2 - mu * b1


def _closest_in_plane(b1: np.ndarray, b2: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Closest point of Z b1 + Z b2 to the projection of ``target``."""
    gram = np.array([[b1 @ b1, b1 @ b2], [b1 @ b2, b2 @ b2]])
    coeffs = np.linalg.solve(gram, np.array([b1 @ target, b2 @ target]))
    base = np.floor(coeffs)
    best, best_dist = None, math.inf
    for dx, dy in itertools.product((-1, 0, 1, 2), repeat=2):
        point = (base[0] + dx) * b1 + (base[1] + dy) * b2
        dist = float((target - point) @ (target - point))
        if dist < best_dist:
            best, best_dist = point, dist
    return best


def greedy_reduce(basis: np.ndarray, max_iter: int = 10_000) -> np.ndarray:
    """Greedy-reduce the columns of a 3×3 basis; columns sorted by length."""
    cols = [basis[:, j].astype(float) for j in range(3)]
    for _ in range(max_iter):
        cols.sort(key=lambda v: float(v @ v))
        b1, b2 = _gauss_reduce_2(cols[0], cols[1])
        b3 = cols[2]
        shorter = b3 - _closest_in_plane(b1, b2, b3)
        if shorter @ shorter >= b3 @ b3 * (1 - 1e-12):
            cols = sorted([b1, b2, b3], key=lambda v: float(v @ v))
            return np.column_stack(cols)
        cols = [b1, b2, shorter]
    raise RuntimeError(f"greedy reduction did not settle in {max_iter} steps")


@dataclass(frozen=True)
class LatticeSample:
    """A unimodular lattice with its reduced basis and shortest length."""

    basis: np.ndarray
    reduced_basis: np.ndarray = field(repr=False)
    lambda1: float

    @classmethod
    def from_basis(
        cls, basis: np.ndarray, simulation: SimulationSettings | None = None
    ) -> "LatticeSample":
        """Raises ValueError unless |det(basis) − 1| < 1e-9."""
        simulation = simulation or SimulationSettings()
        basis = np.asarray(basis, dtype=float)
        if basis.shape != (3, 3):
            raise ValueError(f"expected a 3×3 basis, got shape {basis.shape}")
        det = float(np.linalg.det(basis))
        if abs(det - 1.0) >= _DET_TOL:
            raise ValueError(f"basis has determinant {det}, expected 1")
        reduced = greedy_reduce(basis, simulation.reduction_max_iter)
        return cls(basis, reduced, float(np.linalg.norm(reduced[:, 0])))


def _check_theta(theta: CochVec) -> None:
    if len(theta.coords) != 3:
        raise ValueError(f"theta must have 3 coordinates, got {len(theta.coords)}")
    if sum(Fraction(x) for x in theta.coords) != 0:
        raise ValueError("theta must have zero trace")


def _sample_block(
    theta: tuple[float, float, float],
    t: float,
    count: int,
    seed: np.random.SeedSequence,
    simulation: SimulationSettings,
) -> list[LatticeSample]:
    rng = np.random.default_rng(seed)
    a_t = np.diag(np.exp(t * np.asarray(theta)))
    entries = rng.random((count, 3))
    out = []
    for u12, u13, u23 in entries:
        u = np.array([[1.0, u12, u13], [0.0, 1.0, u23], [0.0, 0.0, 1.0]])
        out.append(LatticeSample.from_basis(a_t @ u, simulation))
    return out


def sample_translate_lattices_sl3(
    theta: CochVec,
    t: float,
    N: int,
    seed: int = 0,
    simulation: SimulationSettings | None = None,
    enumeration: EnumerationSettings | None = None,
    jobs: int = 1,
) -> list[LatticeSample]:
    """N lattices a_t·u_k·Z³ with u_k unipotent upper triangular.

    The entries of u_k are uniform in [0, 1), drawn block by block from
    children of ``SeedSequence(seed)``, so the output does not depend on
    ``jobs``.

    Raises:
        ValueError: for θ outside the trace-zero plane or N < 1.
    """
    _check_theta(theta)
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    simulation = simulation or SimulationSettings()
    enumeration = enumeration or EnumerationSettings()
    blocks = sample_blocks(N, enumeration.block_size)
    seeds = block_seeds(seed, len(blocks))
    theta_f = tuple(float(x) for x in theta.coords)
    tasks = [(theta_f, float(t), count, s, simulation) for (_, count), s in zip(blocks, seeds)]
    samples = [lat for part in run_partitioned(_sample_block, tasks, jobs) for lat in part]
    logger.debug("sampled %d SL3 lattices at t=%g theta=%s", N, t, theta_f)
    return samples


def random_unimodular(rng: np.random.Generator, steps: int = 12) -> np.ndarray:
    """A random element of SL₃(Z) as a product of elementary matrices."""
    g = np.eye(3, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(3, size=2, replace=False)
        e = np.eye(3, dtype=np.int64)
        e[i, j] = int(rng.integers(-2, 3))
        g = g @ e
    return g


def lattice_vectors_in_ball(
    reduced_basis: np.ndarray, r: float, max_candidates: int
) -> np.ndarray:
    """Nonzero lattice vectors of norm ≤ r, as rows.

    Coefficients satisfy |x_i| ≤ r·‖row_i(B⁻¹)‖.

    Raises:
        EnumerationLimitError: if the coefficient box exceeds ``max_candidates``.
    """
    inv = np.linalg.inv(reduced_basis)
    bounds = np.floor(r * np.linalg.norm(inv, axis=1) + 1e-9).astype(int)
    size = int(np.prod(2 * bounds + 1))
    if size > max_candidates:
        raise EnumerationLimitError(f"enumeration box of {size} points exceeds {max_candidates}")
    axes = [np.arange(-b, b + 1) for b in bounds]
    coeffs = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    vectors = coeffs @ reduced_basis.T
    norms = np.einsum("ij,ij->i", vectors, vectors)
    keep = (norms <= r * r) & np.any(coeffs != 0, axis=1)
    return vectors[keep]


def shortest_by_enumeration(reduced_basis: np.ndarray, max_candidates: int = 1_000_000) -> float:
    """λ1 by exhaustive search in the ball of radius ‖b1‖."""
    r = float(np.linalg.norm(reduced_basis[:, 0]))
    vectors = lattice_vectors_in_ball(reduced_basis, r * (1 + 1e-12), max_candidates)
    return float(np.sqrt(np.einsum("ij,ij->i", vectors, vectors).min()))


def lattice_with_basis_change(sample: LatticeSample, g: Sequence[Sequence[int]]) -> LatticeSample:
    """The same lattice presented by ``basis @ g`` for g ∈ SL₃(Z)."""
    g = np.asarray(g)
    if round(float(np.linalg.det(g))) != 1:
        raise ValueError("basis change must have determinant 1")
    return LatticeSample.from_basis(sample.basis @ g)
