"""
Root-datum algebra

Exact construction and validation of split and relative root data, fundamental
weights, parabolic characters ρ'_F, pairings, simple reflections and the
functions d_α on SL_2/SL_3.
"""

from src.rootsys.adjoint import adjoint_wedge_norm, d_alpha, diagonal_d_alpha
from src.rootsys.datum import (
    CharVec,
    CochVec,
    ParabolicIndex,
    PositiveRoot,
    RootDatum,
    RootDatumError,
    pair,
)
from src.rootsys.loader import load_relative_datum
from src.rootsys.report import cone_section, datum_report
from src.rootsys.split import build_root_datum, parse_type, split_datum


def fundamental_weights(datum: RootDatum) -> list[CharVec]:
    return list(datum.fundamental_weights)


def rho_prime(datum: RootDatum, subset: ParabolicIndex) -> CharVec:
    return datum.rho_prime(subset)


def reflect(datum: RootDatum, w: CharVec, index: int) -> CharVec:
    return datum.reflect(w, index)


__all__ = [
    "CharVec",
    "CochVec",
    "ParabolicIndex",
    "PositiveRoot",
    "RootDatum",
    "RootDatumError",
    "adjoint_wedge_norm",
    "build_root_datum",
    "cone_section",
    "d_alpha",
    "datum_report",
    "diagonal_d_alpha",
    "fundamental_weights",
    "load_relative_datum",
    "pair",
    "parse_type",
    "reflect",
    "rho_prime",
    "split_datum",
]
