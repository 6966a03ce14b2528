"""Decision procedure for translated horospherical measures.

For a ray a_t = θ(e^t) and E ⊆ Δ the pairings p_α = (λ_α, θ), α ∉ E, decide:

- some p_α < 0: the translates diverge;
- otherwise they converge to μ_{Q_F} with F = E ∪ {α : p_α > 0},
  which is the Haar measure when F = Δ.

For sequences the same rule is read off the behaviour of λ_α(a_n); anything
other than "tends to 1" or "tends to ∞" (with no "tends to 0") is reported as
not covered.
"""

from __future__ import annotations

import logging

from src.rootsys import CochVec, ParabolicIndex, RootDatum, pair
from src.utils.rationals import format_rational

from .verdict import (
    Behavior,
    ConePosition,
    DualConeKind,
    RegimeVerdict,
    SequenceBehavior,
    VerdictKind,
    converged,
)

logger = logging.getLogger(__name__)


def _check_subset(datum: RootDatum, E: ParabolicIndex) -> None:
    datum.parabolic(E.subset)


def cone_position(datum: RootDatum, theta: CochVec) -> ConePosition:
    weights = {i: pair(lam, theta) for i, lam in zip(datum.indices, datum.fundamental_weights)}
    roots = {i: datum.root_pairing(i, theta) for i in datum.indices}

    negative = tuple(i for i, p in weights.items() if p < 0)
    zero = tuple(i for i, p in weights.items() if p == 0)
    if negative:
        dual, facets = DualConeKind.OUTSIDE, negative
    elif zero:
        dual, facets = DualConeKind.BOUNDARY, zero
    else:
        dual, facets = DualConeKind.INTERIOR, ()

    violations = tuple(i for i, p in roots.items() if p < 0)
    return ConePosition(
        dual=dual,
        dual_facets=facets,
        weyl_chamber_interior=all(p > 0 for p in roots.values()),
        in_weyl_chamber=not violations,
        chamber_violations=violations,
    )


def classify_ray(datum: RootDatum, E: ParabolicIndex, theta: CochVec) -> RegimeVerdict:
    """Classify the limit of θ(e^t)·μ_{Q_E} as t → ∞.

    Raises:
        ValueError: if θ = 0, its dimension does not match, or E ⊄ Δ.
    """
    if len(theta.coords) != datum.ambient_dim:
        raise ValueError(
            f"Cocharacter has dimension {len(theta.coords)}, expected {datum.ambient_dim}"
        )
    if theta.is_zero:
        raise ValueError("Cocharacter θ must be nonzero")
    _check_subset(datum, E)

    outside = datum.complement(E)
    pairings = {i: pair(datum.fundamental_weight(i), theta) for i in outside}
    witnesses = {f"a{i}": format_rational(p) for i, p in pairings.items()}
    position = cone_position(datum, theta)

    if any(p < 0 for p in pairings.values()):
        verdict = RegimeVerdict(VerdictKind.DIVERGES, None, witnesses, position)
    else:
        target = E.union(i for i, p in pairings.items() if p > 0)
        verdict = converged(datum, target, witnesses=witnesses, cone_position=position)
    logger.debug("classify_ray %s E=%s -> %s", datum.name, E.label(), verdict.kind.value)
    return verdict


def classify_sequence(
    datum: RootDatum, E: ParabolicIndex, behavior: SequenceBehavior
) -> RegimeVerdict:
    """Classify a_n·μ_{Q_E} from the behaviour of λ_α(a_n), α ∉ E."""
    _check_subset(datum, E)
    expected = set(datum.complement(E).subset)
    if set(behavior.behaviors) != expected:
        raise ValueError(f"Behaviours must cover exactly {sorted(expected)}")

    witnesses = {f"a{i}": b.value for i, b in sorted(behavior.behaviors.items())}
    values = set(behavior.behaviors.values())
    if Behavior.TO_ZERO in values:
        return RegimeVerdict(VerdictKind.DIVERGES, None, witnesses)
    if values <= {Behavior.ONE, Behavior.TO_INFINITY}:
        target = E.union(i for i, b in behavior.behaviors.items() if b is Behavior.TO_INFINITY)
        return converged(datum, target, witnesses=witnesses)
    return RegimeVerdict(VerdictKind.NOT_COVERED, None, witnesses)


def behavior_of_ray(datum: RootDatum, E: ParabolicIndex, theta: CochVec) -> SequenceBehavior:
    """The behaviour profile induced by a ray: sign of each pairing."""
    out = {}
    for i in datum.complement(E):
        p = pair(datum.fundamental_weight(i), theta)
        out[i] = Behavior.TO_INFINITY if p > 0 else Behavior.ONE if p == 0 else Behavior.TO_ZERO
    return SequenceBehavior(out)
