"""Checkable conditions for absolutely continuous limits of translates.

Given E ⊆ F ⊆ Δ and a ray θ on split data:

- (a) the derived Levi of P_F has no fixed vector on Lie R_u(Q_F). A root
  space g_φ (φ ∈ Φ_F) spans a trivial submodule exactly when φ has weight zero
  for every α ∈ F and φ + α is not a root for every α ∈ F.
- (b) invariance under anisotropic factors; not decidable from root data.
- (c) (λ_α, θ) = 0 for α ∉ F and (λ_α, θ) > 0 for α ∈ F ∖ E.
- (d) for each irreducible component of the F-subsystem, the sum of (φ, θ)
  over its positive roots is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping

from src.rootsys import CochVec, ParabolicIndex, RootDatum, pair
from src.rootsys.datum import dot
from src.utils.errors import UnsupportedError
from src.utils.rationals import format_rational, format_rational_list


class ConditionStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_CHECKABLE = "not_checkable"


@dataclass(frozen=True)
class ConditionResult:
    status: ConditionStatus
    witnesses: Mapping[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is ConditionStatus.PASS

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status.value, "witnesses": dict(self.witnesses)}


@dataclass(frozen=True)
class AbsContChecklist:
    cond_a: ConditionResult
    cond_b: ConditionResult
    cond_c: ConditionResult
    cond_d: ConditionResult

    @property
    def checkable_pass(self) -> bool:
        return self.cond_a.passed and self.cond_c.passed and self.cond_d.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "cond_a": self.cond_a.to_dict(),
            "cond_b": self.cond_b.to_dict(),
            "cond_c": self.cond_c.to_dict(),
            "cond_d": self.cond_d.to_dict(),
        }


def _status(ok: bool) -> ConditionStatus:
    return ConditionStatus.PASS if ok else ConditionStatus.FAIL


def levi_fixed_roots(datum: RootDatum, F: ParabolicIndex) -> list[tuple]:
    """Roots φ ∈ Φ_F whose root space is fixed by the derived Levi of P_F."""
    positives = {p.vector for p in datum.positive_roots}
    fixed = []
    for p in datum.roots_outside(F):
        phi = p.vector
        if any(datum.coroot_pairing(phi, i) != 0 for i in F):
            continue
        shifted = (
            tuple(x + y for x, y in zip(phi, datum.simple_root(i))) for i in F
        )
        if all(s not in positives for s in shifted):
            fixed.append(phi)
    return fixed


def _cond_a(datum: RootDatum, F: ParabolicIndex) -> ConditionResult:
    fixed = levi_fixed_roots(datum, F)
    return ConditionResult(
        _status(not fixed),
        {"levi_fixed_roots": [format_rational_list(v) for v in fixed]},
    )


def _cond_c(
    datum: RootDatum, E: ParabolicIndex, F: ParabolicIndex, theta: CochVec
) -> ConditionResult:
    witnesses = {}
    ok = True
    for i in datum.indices:
        p = pair(datum.fundamental_weight(i), theta)
        if i in F and i in E:
            continue
        witnesses[f"a{i}"] = format_rational(p)
        if i not in F:
            ok = ok and p == 0
        else:
            ok = ok and p > 0
    return ConditionResult(_status(ok), witnesses)


def _cond_d(datum: RootDatum, F: ParabolicIndex, theta: CochVec) -> ConditionResult:
    witnesses = {}
    ok = True
    for comp in datum.components(F):
        total = sum(
            (p.mult * dot(p.vector, theta.coords) for p in datum.roots_inside(comp)),
            Fraction(0),
        )
        witnesses[comp.label()] = format_rational(total)
        ok = ok and total > 0
    return ConditionResult(_status(ok), witnesses)


def abs_cont_check(
    datum: RootDatum, E: ParabolicIndex, F: ParabolicIndex, theta: CochVec
) -> AbsContChecklist:
    """Evaluate the root-datum checkable conditions (a), (c), (d).

    Raises:
        UnsupportedError: for non-split data.
        ValueError: if E ⊄ F or θ has the wrong dimension.
    """
    if not datum.split:
        raise UnsupportedError("abs_cont_check requires split root data")
    datum.parabolic(F.subset)
    if not E <= F:
        raise ValueError(f"E={E.label()} must be contained in F={F.label()}")
    if len(theta.coords) != datum.ambient_dim:
        raise ValueError(
            f"Cocharacter has dimension {len(theta.coords)}, expected {datum.ambient_dim}"
        )
    return AbsContChecklist(
        cond_a=_cond_a(datum, F),
        cond_b=ConditionResult(
            ConditionStatus.NOT_CHECKABLE,
            {"reason": "invariance under anisotropic factors is not visible in root data"},
        ),
        cond_c=_cond_c(datum, E, F, theta),
        cond_d=_cond_d(datum, F, theta),
    )
