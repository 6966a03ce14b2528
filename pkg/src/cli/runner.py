"""Map experiment manifests onto the computational packages.

Each kind has one handler taking the manifest parameters and a ``RunContext``
and returning ``(outputs, provenance)``. Handlers validate eagerly so a bad
manifest fails before any counting or sampling starts.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Mapping

from src.asymptotics import (
    ball_exponential_integral,
    cone_region_estimate,
    log_g_m,
    log_normalized_g_m,
)
from src.config import ConfigManager
from src.countlab import (
    CountSeries,
    LineBundleChar,
    count_projective,
    counting_exponents,
    fit_growth,
    fit_points,
    flags_series,
    horocycle_series,
    partial_exponents,
    projective_series,
    xi_tail_check,
)
from src.countlab.exponents import max_type_not_in
from src.equisim import (
    cusp_report,
    escape_fraction,
    lambda1_quantiles,
    radius_for_volume,
    sample_horocycle_sl2,
    sample_translate_lattices_sl3,
    siegel_statistic,
)
from src.regimes import SequenceBehavior, abs_cont_check, classify_ray, classify_sequence
from src.rootsys import CochVec, ParabolicIndex, RootDatum, build_root_datum, load_relative_datum
from src.rootsys.report import cone_section, datum_report
from src.utils.rationals import (
    format_rational,
    format_rational_list,
    parse_rational,
    parse_rational_list,
)

from .manifest import ExperimentManifest, ManifestError, ResultRecord, parse_grid

logger = logging.getLogger(__name__)

Outputs = tuple[dict[str, Any], dict[str, str]]


@dataclass(frozen=True)
class RunContext:
    config: ConfigManager
    seed: int
    jobs: int


# -------
# Helpers
# -------


def _require(params: Mapping[str, Any], key: str) -> Any:
    if key not in params:
        raise ManifestError(f"missing parameter {key!r}")
    return params[key]


def _datum(params: Mapping[str, Any]) -> RootDatum:
    """The datum named by ``type`` (split label), ``datum`` (mapping) or ``datum_path``."""
    scale = parse_rational(params.get("metric_scale", 1))
    if "type" in params:
        return build_root_datum(str(params["type"]), metric_scale=scale)
    if "datum" in params:
        return build_root_datum(params["datum"])
    if "datum_path" in params:
        return load_relative_datum(params["datum_path"])
    raise ManifestError("one of 'type', 'datum' or 'datum_path' is required")


def _subset(datum: RootDatum, value: Any, name: str) -> ParabolicIndex:
    if value is None:
        return datum.parabolic()
    if isinstance(value, str):
        value = [v for v in value.replace("a", "").split(",") if v.strip()]
    try:
        return datum.parabolic(int(v) for v in value)
    except (TypeError, ValueError) as e:
        raise ManifestError(f"{name}: invalid subset {value!r}: {e}") from e


def _cochar(value: Any) -> CochVec:
    return CochVec(parse_rational_list(value))


def _attach_fit(series: CountSeries, params: Mapping[str, Any], default: str | None, ctx: RunContext) -> CountSeries:
    model = params.get("fit", default)
    if model in (None, "none"):
        return series
    if len(series.points) < ctx.config.fitting.min_points:
        logger.info("skipping %s fit: %d points", model, len(series.points))
        return series
    a = params.get("a")
    return fit_growth(series, model, ctx.config.fitting, parse_rational(a) if a is not None else None)


# --------
# Handlers
# --------


def _run_rootsys(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    datum = _datum(params)
    outputs: dict[str, Any] = {"datum": datum_report(datum)}
    if datum.rank == 2:
        outputs["cone_section"] = cone_section(datum)
    return outputs, {}


def _run_classify(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    datum = _datum(params)
    E = _subset(datum, params.get("E"), "E")
    outputs: dict[str, Any] = {"datum": datum.name, "E": sorted(E.subset)}
    if "theta" in params:
        theta = _cochar(params["theta"])
        outputs["theta"] = format_rational_list(theta.coords)
        outputs["verdict"] = classify_ray(datum, E, theta).to_dict()
        if datum.rank == 2:
            outputs["cone_section"] = cone_section(datum, theta)
        if "F" in params:
            F = _subset(datum, params["F"], "F")
            outputs["abs_cont"] = abs_cont_check(datum, E, F, theta).to_dict()
    elif "behavior" in params:
        behavior = SequenceBehavior.for_datum(datum, E, params["behavior"])
        outputs["verdict"] = classify_sequence(datum, E, behavior).to_dict()
    else:
        raise ManifestError("classify needs 'theta' or 'behavior'")
    return outputs, {}


def _run_gm(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    m = int(_require(params, "m"))
    rows = []
    for x in parse_grid(_require(params, "x"), "x"):
        log_value = log_g_m(m, x, ctx.config.numerics)
        rows.append(
            {
                "x": x,
                "log_g_m": log_value,
                "g_m": math.exp(log_value) if log_value < 700 else None,
                "log_normalized_g_m": log_normalized_g_m(m, x, ctx.config.numerics),
            }
        )
    return {"m": m, "rows": rows}, {}


def _run_ball(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    v0 = [float(v) for v in _require(params, "v0")]
    n = params.get("n")
    rows = [
        ball_exponential_integral(v0, n, R, ctx.config.numerics).to_dict()
        for R in parse_grid(_require(params, "R"), "R")
    ]
    return {"rows": rows}, {}


def _run_region(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    m = [int(v) for v in _require(params, "m")]
    c = [int(v) for v in _require(params, "c")]
    y = params.get("y")
    mode = params.get("mode", "grid")
    estimates = [
        cone_region_estimate(
            m,
            c,
            T,
            y,
            mode,
            samples=int(params.get("samples", 100_000)),
            seed=ctx.seed,
            numerics=ctx.config.numerics,
            enumeration=ctx.config.enumeration,
            jobs=ctx.jobs,
        )
        for T in parse_grid(_require(params, "T"), "T")
    ]
    outputs: dict[str, Any] = {"estimates": [e.to_dict() for e in estimates], "fit": None}
    positive = [e for e in estimates if e.value > 0]
    if len(positive) >= ctx.config.fitting.min_points:
        fit = fit_points(
            [e.T for e in positive], [e.value for e in positive], "power_log", ctx.config.fitting
        )
        outputs["fit"] = fit.to_dict()
    return outputs, {}


def _run_exponents(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    datum = _datum(params)
    E = _subset(datum, params.get("E"), "E")
    values = parse_rational_list(_require(params, "c"))
    if any(v.denominator != 1 for v in values):
        raise ManifestError(f"c must be integers, got {format_rational_list(values)}")
    bundle = LineBundleChar.from_list(datum, E, values)
    outputs = {"exponents": counting_exponents(datum, bundle).to_dict()}
    if "F" in params:
        F = _subset(datum, params["F"], "F")
        a_F, b_F = partial_exponents(datum, bundle, F)
        outputs["partial"] = {
            "F": sorted(F.subset),
            "a_F": format_rational(a_F),
            "b_F": b_F,
            "max_type_not_in_F": max_type_not_in(datum, bundle, F),
        }
    return outputs, {}


def _run_projective(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    n = int(_require(params, "n"))
    Ts = parse_grid(_require(params, "T"), "T")
    strategy = params.get("strategy", "sieve")
    series = projective_series(n, Ts, strategy, ctx.config.enumeration, ctx.jobs)
    outputs: dict[str, Any] = {"series": _attach_fit(series, params, "power_log", ctx).to_dict()}
    if params.get("cross_check"):
        other = "exhaustive" if strategy == "sieve" else "sieve"
        outputs["cross_check"] = all(
            count_projective(n, T, other, ctx.config.enumeration, ctx.jobs) == N
            for T, N in series.points
        )
    return outputs, {}


def _run_flags(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    c1, c2 = (int(v) for v in _require(params, "c"))
    Ts = parse_grid(_require(params, "T"), "T")
    series = flags_series(
        c1, c2, Ts, params.get("strategy", "balanced"), ctx.config.enumeration, ctx.jobs
    )
    return {"series": _attach_fit(series, params, "power_log", ctx).to_dict()}, {}


def _run_horocycles(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    Rs = parse_grid(_require(params, "R"), "R")
    series = horocycle_series(Rs, params.get("strategy", "sieve"), ctx.jobs)
    return {"series": _attach_fit(series, params, "exponential", ctx).to_dict()}, {}


def read_series_csv(path: str | Path) -> CountSeries:
    """Read a two-column ``T,N`` (or ``R,N``) file written by ``emit``."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise ManifestError(f"Cannot read series {path}: {e}") from e
    if not rows or len(rows[0]) < 2:
        raise ManifestError(f"{path}: expected a 'T,N' or 'R,N' header")
    x_label = rows[0][0]
    try:
        points = [(float(r[0]), float(r[1])) for r in rows[1:] if r]
    except (IndexError, ValueError) as e:
        raise ManifestError(f"{path}: malformed row: {e}") from e
    return CountSeries.from_pairs(points, x_label=x_label)


def _run_fit(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    if "csv" in params:
        series = read_series_csv(params["csv"])
    else:
        points = _require(params, "points")
        series = CountSeries.from_pairs(points, x_label=params.get("x_label", "T"))
    default = "exponential" if series.x_label == "R" else "power_log"
    fitted = _attach_fit(series, {**params, "fit": params.get("model", default)}, default, ctx)
    if fitted.fit is None:
        raise ManifestError(
            f"need at least {ctx.config.fitting.min_points} points to fit, got {len(series.points)}"
        )
    return {"series": fitted.to_dict()}, {}


def _run_xi(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    report = xi_tail_check(float(_require(params, "s")), int(_require(params, "Q_max")))
    return {"xi": report.to_dict()}, {}


def _run_sim_horocycle(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    y0 = float(_require(params, "y0"))
    N = int(_require(params, "N"))
    points = sample_horocycle_sl2(y0, N, ctx.config.simulation)
    reports = []
    for h in parse_grid(params.get("h", [2.0]), "h"):
        report = dict(cusp_report(points, h))
        report["h"] = h
        reports.append(report)
    provenance = {"cusp_mass": reports[0]["oracle"]}
    return {"y0": y0, "N": N, "cusp": reports}, provenance


def _run_sim_sl3(params: Mapping[str, Any], ctx: RunContext) -> Outputs:
    theta = _cochar(_require(params, "theta"))
    N = int(_require(params, "N"))
    stat = params.get("stat", "siegel")
    if stat not in ("siegel", "escape", "lambda1"):
        raise ManifestError(f"unknown statistic {stat!r}; expected siegel, escape or lambda1")
    provenance: dict[str, str] = {}
    rows = []
    for t in parse_grid(_require(params, "t"), "t"):
        samples = sample_translate_lattices_sl3(
            theta, t, N, ctx.seed, ctx.config.simulation, ctx.config.enumeration, ctx.jobs
        )
        row: dict[str, Any] = {"t": t}
        if stat == "escape":
            eps = float(params.get("eps", 0.1))
            row.update(statistic="escape", eps=eps, value=escape_fraction(samples, eps))
        elif stat == "lambda1":
            row.update(statistic="lambda1", quantiles=lambda1_quantiles(samples))
        else:
            r = float(params["r"]) if "r" in params else radius_for_volume(float(params.get("volume", 10.0)))
            report = siegel_statistic(samples, r, ctx.config.enumeration, ctx.jobs).to_dict()
            provenance["siegel"] = report["oracle"]
            row.update(report, r=r)
        rows.append(row)
    outputs = {"theta": format_rational_list(theta.coords), "N": N, "seed": ctx.seed, "rows": rows}
    return outputs, provenance


HANDLERS: dict[str, Callable[[Mapping[str, Any], RunContext], Outputs]] = {
    "rootsys": _run_rootsys,
    "classify": _run_classify,
    "asym.gm": _run_gm,
    "asym.ball": _run_ball,
    "asym.region": _run_region,
    "count.exponents": _run_exponents,
    "count.projective": _run_projective,
    "count.flags": _run_flags,
    "count.horocycles": _run_horocycles,
    "count.fit": _run_fit,
    "count.xi": _run_xi,
    "sim.horocycle": _run_sim_horocycle,
    "sim.sl3": _run_sim_sl3,
}


def run_experiment(
    manifest: ExperimentManifest,
    config: ConfigManager | None = None,
    jobs: int | None = None,
) -> ResultRecord:
    """Execute ``manifest`` and return its record, timestamped now.

    Raises:
        ManifestError: for missing or malformed parameters.
        ValueError: for any domain precondition the target operation rejects.
    """
    config = config or ConfigManager(None)
    seed = manifest.seed if manifest.seed is not None else config.simulation.default_seed
    ctx = RunContext(config, seed, jobs if jobs is not None else config.runtime.jobs)
    handler = HANDLERS.get(manifest.kind)
    if handler is None:
        raise ManifestError(f"Unknown experiment kind {manifest.kind!r}")
    logger.info("running %s (seed=%d, jobs=%d)", manifest.kind, ctx.seed, ctx.jobs)
    outputs, provenance = handler(manifest.params, ctx)
    logger.info("finished %s", manifest.kind)
    return ResultRecord(manifest.stamped(), outputs, provenance)
