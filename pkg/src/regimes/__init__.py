"""
Regimes

Symbolic classification of translated horospherical measures: divergence,
convergence to μ_{Q_F}, Haar, or outside the covered hypotheses.
"""

from src.regimes.abscont import AbsContChecklist, ConditionStatus, abs_cont_check
from src.regimes.classify import (
    behavior_of_ray,
    classify_ray,
    classify_sequence,
    cone_position,
)
from src.regimes.verdict import (
    Behavior,
    ConePosition,
    DualConeKind,
    RegimeVerdict,
    SequenceBehavior,
    VerdictKind,
)

__all__ = [
    "AbsContChecklist",
    "Behavior",
    "ConditionStatus",
    "ConePosition",
    "DualConeKind",
    "RegimeVerdict",
    "SequenceBehavior",
    "VerdictKind",
    "abs_cont_check",
    "behavior_of_ray",
    "classify_ray",
    "classify_sequence",
    "cone_position",
]
