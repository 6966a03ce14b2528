"""Verdict types for the translate classifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from src.rootsys import ParabolicIndex, RootDatum
from src.utils.types import VerdictReport


class VerdictKind(str, Enum):
    DIVERGES = "Diverges"
    CONVERGES_TO = "ConvergesTo"
    HAAR = "Haar"
    NOT_COVERED = "NotCovered"


class Behavior(str, Enum):
    """Asymptotic behaviour of λ_α(a_n) along a sequence."""

    TO_ZERO = "ToZero"
    ONE = "One"
    BOUNDED = "BoundedBelowAwayFromZero"
    TO_INFINITY = "ToInfinity"


class DualConeKind(str, Enum):
    INTERIOR = "DualConeInterior"
    BOUNDARY = "DualConeBoundary"
    OUTSIDE = "OutsideDualCone"


@dataclass(frozen=True)
class SequenceBehavior:
    """One behaviour per simple root outside E."""

    behaviors: Mapping[int, Behavior]

    @classmethod
    def for_datum(
        cls, datum: RootDatum, E: ParabolicIndex, behaviors: Mapping[int, Behavior | str]
    ) -> "SequenceBehavior":
        """Validate that ``behaviors`` covers exactly Δ ∖ E.

        Raises:
            ValueError: on missing or extra roots, or unknown behaviour names.
        """
        expected = set(datum.complement(E).subset)
        got = {int(k) for k in behaviors}
        if got != expected:
            raise ValueError(
                f"Behaviours must cover exactly {sorted(expected)}, got {sorted(got)}"
            )
        return cls({int(k): Behavior(v) for k, v in behaviors.items()})


@dataclass(frozen=True)
class ConePosition:
    """Where θ sits relative to the dual cone and the positive Weyl chamber.

    ``dual_facets`` lists the α with (λ_α, θ) = 0 for a boundary point, or
    those with (λ_α, θ) < 0 outside the cone. ``chamber_violations`` lists the
    α with (α, θ) < 0.
    """

    dual: DualConeKind
    dual_facets: tuple[int, ...]
    weyl_chamber_interior: bool
    in_weyl_chamber: bool
    chamber_violations: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "dual_cone": self.dual.value,
            "dual_facets": [f"a{i}" for i in self.dual_facets],
            "weyl_chamber_interior": self.weyl_chamber_interior,
            "in_weyl_chamber": self.in_weyl_chamber,
            "chamber_violations": [f"a{i}" for i in self.chamber_violations],
        }


@dataclass(frozen=True)
class RegimeVerdict:
    """Outcome of the classifier.

    ``target`` is F for ConvergesTo and Δ for Haar; None otherwise.
    """

    kind: VerdictKind
    target: ParabolicIndex | None = None
    witnesses: Mapping[str, str] = field(default_factory=dict)
    cone_position: ConePosition | None = None

    def to_dict(self) -> VerdictReport:
        return {
            "kind": self.kind.value,
            "F": sorted(self.target.subset) if self.target is not None else None,
            "witnesses": dict(self.witnesses),
            "cone_position": self.cone_position.to_dict() if self.cone_position else None,
        }


def converged(datum: RootDatum, target: ParabolicIndex, **kwargs) -> RegimeVerdict:
    kind = VerdictKind.HAAR if target == datum.delta else VerdictKind.CONVERGES_TO
    return RegimeVerdict(kind, target, **kwargs)
