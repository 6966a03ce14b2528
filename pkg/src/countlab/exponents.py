"""Counting exponents (a, b) for a metrized line bundle on G/P_E.

For χ = Σ_{α∉E} c_α λ_α and ρ'_E = Σ_{α∉E} m_α λ_α, the number of rational
points of height at most T grows like C T^a (log T)^{b−1} with

    a = max_{α∉E} m_α / c_α,   F_χ = E ∪ {α : m_α / c_α = a},   b = |F_χ ∖ E|.

The partial exponents a_F, b_F restrict the max to α ∈ F ∖ E.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from src.rootsys.datum import ParabolicIndex, RootDatum
from src.utils.rationals import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineBundleChar:
    """χ = Σ_{α∉E} c_α λ_α with positive integer coefficients."""

    E: ParabolicIndex
    c: Mapping[int, int]

    def validate(self, datum: RootDatum) -> None:
        """Raises ValueError unless c covers exactly Δ ∖ E with entries ≥ 1."""
        if self.E == datum.delta:
            raise ValueError("E must be a proper subset of Δ")
        if not self.E <= datum.delta:
            raise ValueError(f"E={self.E.label()} is not a subset of Δ")
        outside = set(datum.complement(self.E))
        missing = sorted(outside - set(self.c))
        if missing:
            raise ValueError(f"missing c_α for α in {missing}")
        extra = sorted(set(self.c) - outside)
        if extra:
            raise ValueError(f"c_α given for α in E or outside Δ: {extra}")
        for alpha, value in self.c.items():
            if int(value) != value or value < 1:
                raise ValueError(f"c_a{alpha} = {value} is not a positive integer")

    @classmethod
    def from_list(cls, datum: RootDatum, E: ParabolicIndex, values) -> "LineBundleChar":
        """Assign ``values`` to Δ ∖ E in increasing index order."""
        outside = list(datum.complement(E))
        values = list(values)
        if len(values) != len(outside):
            raise ValueError(f"expected {len(outside)} coefficients for Δ∖E, got {len(values)}")
        return cls(E, {alpha: int(v) for alpha, v in zip(outside, values)})


@dataclass(frozen=True)
class CountingExponents:
    a: Fraction
    F_chi: ParabolicIndex
    b: int
    m: Mapping[int, int]
    c: Mapping[int, int]

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": format_rational(self.a),
            "F_chi": list(self.F_chi),
            "b": self.b,
            "m": {f"a{k}": v for k, v in sorted(self.m.items())},
            "c": {f"a{k}": v for k, v in sorted(self.c.items())},
        }


def _m_coefficients(datum: RootDatum, E: ParabolicIndex) -> dict[int, int]:
    fw = datum.rho_prime(E).fw_coords
    return {i: int(m) for i, m in zip(datum.indices, fw) if i not in E}


def _ratios(datum: RootDatum, bundle: LineBundleChar) -> tuple[dict[int, int], dict[int, Fraction]]:
    bundle.validate(datum)
    m = _m_coefficients(datum, bundle.E)
    return m, {alpha: Fraction(m[alpha], int(bundle.c[alpha])) for alpha in m}


def counting_exponents(datum: RootDatum, bundle: LineBundleChar) -> CountingExponents:
    """Exact (a, F_χ, b) for ``bundle``; ties all land in F_χ.

    Raises:
        ValueError: if some c_α is missing or not a positive integer.
    """
    m, ratios = _ratios(datum, bundle)
    a = max(ratios.values())
    attaining = [alpha for alpha, r in ratios.items() if r == a]
    F_chi = bundle.E.union(attaining)
    exps = CountingExponents(a, F_chi, len(attaining), m, dict(bundle.c))
    logger.debug("exponents for E=%s: a=%s b=%d", bundle.E.label(), a, exps.b)
    return exps


def partial_exponents(
    datum: RootDatum, bundle: LineBundleChar, F: ParabolicIndex
) -> tuple[Fraction, int]:
    """(a_F, b_F): the max of m_α/c_α over α ∈ F ∖ E and how many attain it.

    Raises:
        ValueError: unless E ⊊ F ⊆ Δ.
    """
    if not (bundle.E <= F and F <= datum.delta) or F == bundle.E:
        raise ValueError(f"need E ⊊ F ⊆ Δ, got E={bundle.E.label()} F={F.label()}")
    _, ratios = _ratios(datum, bundle)
    inside = [ratios[alpha] for alpha in F if alpha not in bundle.E]
    a_F = max(inside)
    return a_F, sum(1 for r in inside if r == a_F)


def max_type_not_in(datum: RootDatum, bundle: LineBundleChar, F: ParabolicIndex) -> bool:
    """True when F_χ ⊄ F."""
    return not counting_exponents(datum, bundle).F_chi <= F
