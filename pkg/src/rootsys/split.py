"""Split root data of classical types and G2.

Realizations (e_i the standard basis):
- A_n in R^{n+1}: roots e_i − e_j; weights come out trace-zero.
- B_n in R^n: e_i ± e_j, e_i.
- C_n in R^n: e_i ± e_j, 2e_i.
- D_n in R^n: e_i ± e_j.
- G_2 in R^3 on the plane x1 + x2 + x3 = 0: α1 = e1 − e2, α2 = −2e1 + e2 + e3.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Mapping

from .datum import PositiveRoot, RootDatum, RootDatumError

_TYPE_RE = re.compile(r"^\s*([ABCDGabcdg])_?(\d+)\s*$")

_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2, "G": 2}


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def _diff(n: int, i: int, j: int, sign: int = -1) -> list[int]:
    v = [0] * n
    v[i] = 1
    v[j] += sign
    return v


def _type_a(rank: int) -> tuple[list, list]:
    n = rank + 1
    simple = [_diff(n, i, i + 1) for i in range(rank)]
    positive = [_diff(n, i, j) for i in range(n) for j in range(i + 1, n)]
    return simple, positive


def _pairs(n: int) -> list[list[int]]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(_diff(n, i, j, -1))
            out.append(_diff(n, i, j, +1))
    return out


def _type_b(rank: int) -> tuple[list, list]:
    simple = [_diff(rank, i, i + 1) for i in range(rank - 1)] + [_unit(rank, rank - 1)]
    positive = _pairs(rank) + [_unit(rank, i) for i in range(rank)]
    return simple, positive


def _type_c(rank: int) -> tuple[list, list]:
    simple = [_diff(rank, i, i + 1) for i in range(rank - 1)] + [_unit(rank, rank - 1, 2)]
    positive = _pairs(rank) + [_unit(rank, i, 2) for i in range(rank)]
    return simple, positive


def _type_d(rank: int) -> tuple[list, list]:
    simple = [_diff(rank, i, i + 1) for i in range(rank - 1)]
    simple.append(_diff(rank, rank - 2, rank - 1, +1))
    return simple, _pairs(rank)


def _type_g(rank: int) -> tuple[list, list]:
    a1 = [1, -1, 0]
    a2 = [-2, 1, 1]

    def comb(p: int, q: int) -> list[int]:
        return [p * x + q * y for x, y in zip(a1, a2)]

    positive = [comb(1, 0), comb(0, 1), comb(1, 1), comb(2, 1), comb(3, 1), comb(3, 2)]
    return [a1, a2], positive


_BUILDERS = {"A": _type_a, "B": _type_b, "C": _type_c, "D": _type_d, "G": _type_g}


def parse_type(label: str) -> tuple[str, int]:
    """Parse ``"A4"``/``"G_2"`` into ``("A", 4)``.

    Raises:
        ValueError: for unknown families or ranks below the family minimum.
    """
    match = _TYPE_RE.match(label)
    if not match:
        raise ValueError(f"Unknown root system type: {label!r}")
    family, rank = match.group(1).upper(), int(match.group(2))
    if rank < _MIN_RANK[family]:
        raise ValueError(f"Type {family}{rank} needs rank ≥ {_MIN_RANK[family]}")
    if family == "G" and rank != 2:
        raise ValueError("Only G2 is supported among exceptional types")
    return family, rank


def split_datum(label: str, *, metric_scale: Fraction | int = 1) -> RootDatum:
    """Build the split datum for ``label`` with gram = metric_scale · I."""
    family, rank = parse_type(label)
    simple, positive = _BUILDERS[family](rank)
    scale = Fraction(metric_scale)
    if scale <= 0:
        raise ValueError("metric_scale must be positive")
    dim = len(simple[0])
    gram = [[scale if i == j else 0 for j in range(dim)] for i in range(dim)]
    return RootDatum(
        simple,
        [PositiveRoot(tuple(Fraction(x) for x in p)) for p in positive],
        gram,
        name=f"{family}{rank}",
        split=True,
    )


def build_root_datum(
    source: str | Mapping[str, Any], *, metric_scale: Fraction | int = 1
) -> RootDatum:
    """Build a datum from a split type label or an explicit relative-data mapping.

    The mapping form is the one read by ``load_relative_datum``; see there.

    Raises:
        RootDatumError: when explicit data violates a datum invariant.
        ValueError: for malformed type labels.
    """
    if isinstance(source, str):
        return split_datum(source, metric_scale=metric_scale)
    from .loader import datum_from_mapping

    try:
        return datum_from_mapping(source)
    except RootDatumError:
        raise
    except (KeyError, TypeError) as e:
        raise RootDatumError("format", f"malformed relative data: {e}") from e
