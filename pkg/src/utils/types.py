"""Shared TypedDict contracts for JSON reports."""

from __future__ import annotations

from typing import TypedDict


class ErrorBody(TypedDict):
    kind: str
    message: str


class ErrorReport(TypedDict):
    error: ErrorBody


class FitReport(TypedDict, total=False):
    model: str
    exponents: dict[str, float]
    stderrs: dict[str, float]
    snapped_a: str | None
    window: list[float]
    n_points: int


class SeriesReport(TypedDict, total=False):
    x_label: str
    points: list[list[float]]
    fit: FitReport | None
    predicted: dict[str, str | float]
    normalized: list[float]
    c: list[int]


class VerdictReport(TypedDict):
    kind: str
    F: list[int] | None
    witnesses: dict[str, str]
    cone_position: dict[str, object] | None


class BallReport(TypedDict):
    n: int
    v0_norm: float
    R: float
    exact_value: float
    log_exact_value: float
    asymptote: float
    log_asymptote: float
    ratio: float


class RegionReport(TypedDict, total=False):
    m: list[int]
    c: list[int]
    T: float
    mode: str
    value: float
    stderr: float
    predicted_a: str
    predicted_b: int
    predicted_constant: float
    shift_factor: float
    predicted_value: float
    grid_points: int
    samples: int
    seed: int


class StatisticReport(TypedDict, total=False):
    statistic: str
    value: float
    stderr: float
    n_samples: int
    expected: float
    oracle: str
