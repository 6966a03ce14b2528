"""JSON-ready summary of a root datum."""

from __future__ import annotations

from typing import Any

import numpy as np

from src.utils.errors import UnsupportedError
from src.utils.rationals import format_rational_list

from .datum import CochVec, RootDatum


def datum_report(datum: RootDatum) -> dict[str, Any]:
    """Simple roots, coroots, weights, Cartan matrix, k_α and every ρ'_F."""
    rho_table = []
    for subset in datum.all_parabolics():
        rho = datum.rho_prime(subset)
        rho_table.append(
            {
                "F": sorted(subset.subset),
                "coords": format_rational_list(rho.coords),
                "fw_coords": format_rational_list(rho.fw_coords),
            }
        )
    return {
        "name": datum.name,
        "split": datum.split,
        "rank": datum.rank,
        "ambient_dim": datum.ambient_dim,
        "simple_roots": [format_rational_list(a) for a in datum.simple_roots],
        "positive_roots": [
            {"v": format_rational_list(p.vector), "mult": p.mult}
            for p in datum.positive_roots
        ],
        "coroots": [format_rational_list(datum.coroot(i).coords) for i in datum.indices],
        "fundamental_weights": [
            format_rational_list(lam.coords) for lam in datum.fundamental_weights
        ],
        "duality_ratios": format_rational_list(datum.duality_ratios),
        "cartan_matrix": [format_rational_list(row) for row in datum.cartan_matrix],
        "k_alpha": {f"a{i}": datum.k_alpha(i) for i in datum.indices},
        "rho_norm": datum.rho_norm(),
        "rho_prime": rho_table,
    }


def _plane_basis(datum: RootDatum) -> tuple[np.ndarray, np.ndarray]:
    """Gram matrix and a gram-orthonormal basis (rows) of span(α1, α2)."""
    gram = np.array([[float(x) for x in row] for row in datum.gram])
    roots = np.array([[float(x) for x in a] for a in datum.simple_roots])
    basis = []
    for a in roots:
        u = a - sum((a @ gram @ e) * e for e in basis)
        basis.append(u / np.sqrt(u @ gram @ u))
    return gram, np.array(basis)


def _unit_rays(points: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in p / np.linalg.norm(p)] for p in points]


def _angle(rays: list[list[float]]) -> float:
    u, v = (np.asarray(r) for r in rays)
    return float(np.arccos(np.clip(u @ v, -1.0, 1.0)))


def cone_section(datum: RootDatum, theta: CochVec | None = None) -> dict[str, Any]:
    """Boundary rays of the Weyl chamber and of the dual cone in the root plane.

    Coordinates are taken in a gram-orthonormal basis of the span of the
    simple roots. Chamber rays point along the fundamental weights, dual-cone
    rays along the simple roots. A cocharacter θ is placed at (θ·e1, θ·e2),
    so that its pairing with a character is the plane's inner product.

    Raises:
        UnsupportedError: for data of rank other than 2.
    """
    if datum.rank != 2:
        raise UnsupportedError(f"cone sections need rank 2, got rank {datum.rank}")
    gram, basis = _plane_basis(datum)
    project = basis @ gram
    weights = np.array([[float(x) for x in lam.coords] for lam in datum.fundamental_weights])
    roots = np.array([[float(x) for x in a] for a in datum.simple_roots])
    chamber = _unit_rays(weights @ project.T)
    dual = _unit_rays(roots @ project.T)
    out: dict[str, Any] = {
        "weyl_chamber": chamber,
        "dual_cone": dual,
        "weyl_chamber_angle": _angle(chamber),
        "dual_cone_angle": _angle(dual),
    }
    if theta is not None:
        coords = np.array([float(x) for x in theta.coords])
        out["theta"] = [float(x) for x in basis @ coords]
    return out
