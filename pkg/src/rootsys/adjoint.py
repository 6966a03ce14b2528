"""The functions d_α(g) = ‖∧^ℓ Ad(g) v_α‖ on SL_2 and SL_3.

sl_n carries the Frobenius inner product ⟨X, Y⟩ = tr(XᵀY), for which the
elementary matrices E_ij (i ≠ j) are orthonormal. For the maximal parabolic
of α = α_k the nilradical u_α is spanned by E_ij with i ≤ k < j, and v_α is
the wedge of those E_ij, a unit vector of ∧^ℓ sl_n, ℓ = k(n − k).

The norm of a wedge w_1 ∧ … ∧ w_ℓ is sqrt(det ⟨w_i, w_j⟩), computed exactly
and square-rooted only at the end.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
import sympy

from src.utils.errors import UnsupportedError

from .datum import RootDatum, as_vector
from .split import split_datum

SUPPORTED_SIZES = (2, 3)


def _as_matrix(g: Sequence[Sequence]) -> sympy.Matrix:
    rows = [as_vector(row) for row in g]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError("g must be a square matrix")
    if n not in SUPPORTED_SIZES:
        raise UnsupportedError(f"d_alpha supports n in {SUPPORTED_SIZES}, got n={n}")
    return sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]
    )


def nilradical_basis(n: int, alpha: int) -> list[tuple[int, int]]:
    """0-based index pairs (i, j) of the E_ij spanning u_α, α = α_alpha."""
    if not 1 <= alpha < n:
        raise ValueError(f"Simple root index {alpha} out of range 1..{n - 1}")
    return [(i, j) for i in range(alpha) for j in range(alpha, n)]


def d_alpha(g: Sequence[Sequence], alpha: int) -> float:
    """Return d_α(g) for g ∈ SL_n(Q), n ∈ {2, 3}.

    Raises:
        ValueError: if det(g) ≠ 1 or α is out of range.
        UnsupportedError: if n ∉ {2, 3}.
    """
    m = _as_matrix(g)
    if m.det() != 1:
        raise ValueError(f"g must have determinant 1, got {m.det()}")
    n = m.rows
    m_inv = m.inv()
    images = []
    for i, j in nilradical_basis(n, alpha):
        # g E_ij g⁻¹ = (column i of g) ⊗ (row j of g⁻¹)
        image = m[:, i] * m_inv[j, :]
        images.append(list(image))
    w = sympy.Matrix(images)
    gram_det = (w * w.T).det()
    return float(sympy.sqrt(gram_det).evalf(30))


@lru_cache(maxsize=None)
def _type_a(n: int) -> RootDatum:
    return split_datum(f"A{n - 1}")


def k_alpha_sl(n: int, alpha: int) -> int:
    """k_α for SL_n, read off ρ'_{Δ∖{α}} = k_α λ_α."""
    return _type_a(n).k_alpha(alpha)


def diagonal_d_alpha(diagonal: Sequence, alpha: int) -> float:
    """|λ_α(a)|^{k_α} for a = diag(diagonal); equals d_α(a)."""
    a = as_vector(diagonal)
    n = len(a)
    prod = Fraction(1)
    for x in a[:alpha]:
        prod *= x
    return float(abs(prod)) ** k_alpha_sl(n, alpha)


def _sl_basis(n: int) -> np.ndarray:
    """Frobenius-orthonormal basis of sl_n as columns of an n² × (n² − 1) array."""
    cols = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n))
                e[i, j] = 1.0
                cols.append(e.reshape(-1))
    for k in range(1, n):
        h = np.zeros((n, n))
        h[np.arange(k), np.arange(k)] = 1.0
        h[k, k] = -float(k)
        cols.append((h / np.linalg.norm(h)).reshape(-1))
    return np.stack(cols, axis=1)


def adjoint_wedge_norm(g: Sequence[Sequence], alpha: int) -> float:
    """Operator norm of ∧^ℓ Ad(g) on ∧^ℓ sl_n.

    The singular values of a compound matrix are products of singular values,
    so the norm is the product of the ℓ largest singular values of Ad(g).
    """
    m = np.array([[float(x) for x in row] for row in _as_matrix(g).tolist()])
    n = m.shape[0]
    ell = len(nilradical_basis(n, alpha))
    basis = _sl_basis(n)
    ad = np.stack(
        [(m @ col.reshape(n, n) @ np.linalg.inv(m)).reshape(-1) for col in basis.T], axis=1
    )
    ad_sl = basis.T @ ad
    sv = np.linalg.svd(ad_sl, compute_uv=False)
    return float(np.prod(sv[:ell]))
