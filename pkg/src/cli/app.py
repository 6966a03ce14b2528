"""Command-line front end.

Every subcommand builds an ``ExperimentManifest``, runs it and emits the
record. Errors are printed to stdout as ``{"error": {"kind", "message"}}``;
the exit code is 1 for validation errors (any ``ValueError`` and command-line
usage errors) and 2 for everything else.

Commands:
- ``rootsys --type TYPE``: datum summary (plus cone section for rank 2).
- ``classify --type TYPE --cochar ... --parabolic ...``: verdict for a ray or a
  behaviour profile.
- ``asym gm|ball|region``: exponential integrals.
- ``count exponents|projective|flags|horocycles|fit|xi``: exact counts and fits.
- ``sim horocycle|sl3``: Monte-Carlo equidistribution statistics.
- ``run MANIFEST``: execute a manifest file.
"""

import logging
from pathlib import Path
from typing import Annotated, Any, Optional

import typer

try:  # newer typer vendors click; catch the exception classes it actually raises
    from typer._click import exceptions as click_exceptions
    from typer._click.core import Context
except ImportError:
    from click import Context
    from click import exceptions as click_exceptions
from typer.core import TyperGroup

from src.bootstrap import configure_logging, get_config_manager
from src.config import ConfigManager
from src.utils.types import ErrorReport

from .emit import FORMATS, dumps_json, emit
from .manifest import ExperimentManifest, load_manifest
from .runner import run_experiment

logger = logging.getLogger(__name__)

# click < 8.2 exits on its own when no_args_is_help fires
_SHOW_HELP = getattr(click_exceptions, "NoArgsIsHelpError", ())


def _usage_error(e: click_exceptions.UsageError) -> None:
    if isinstance(e, _SHOW_HELP):
        raise e
    _fail(e, 1, message=e.format_message())


class HoroconeGroup(TyperGroup):
    """Reports command-line usage errors like any other validation error."""

    def make_context(self, info_name, args, parent=None, **extra) -> Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click_exceptions.UsageError as e:
            _usage_error(e)

    def invoke(self, ctx: Context) -> Any:
        try:
            return super().invoke(ctx)
        except click_exceptions.UsageError as e:
            _usage_error(e)


app = typer.Typer(
    cls=HoroconeGroup,
    name="horocone",
    help="Translated horospherical measures: classification, asymptotics, counts and simulations.",
    no_args_is_help=True,
    add_completion=False,
)
asym_app = typer.Typer(help="Exponential integrals behind the counting laws.", no_args_is_help=True)
count_app = typer.Typer(help="Exact point counts and growth fits.", no_args_is_help=True)
sim_app = typer.Typer(help="Monte-Carlo equidistribution experiments.", no_args_is_help=True)
app.add_typer(asym_app, name="asym")
app.add_typer(count_app, name="count")
app.add_typer(sim_app, name="sim")

state: dict[str, Any] = {"config_path": None}

# ----------------
# Shared options
# ----------------

Out = Annotated[
    Optional[Path],
    typer.Option("--out", "-o", help="Write the record here (atomically) instead of stdout."),
]
Format = Annotated[
    str, typer.Option("--format", "-f", help=f"Output format: {', '.join(FORMATS)}.")
]
Seed = Annotated[
    Optional[int],
    typer.Option("--seed", help="Seed for sampling; defaults to simulation.default_seed."),
]
Jobs = Annotated[
    Optional[int],
    typer.Option("--jobs", "-j", help="Worker processes; results do not depend on it."),
]
TypeArg = Annotated[
    Optional[str], typer.Argument(metavar="TYPE", help="Split root system type such as A2, B3 or G2.")
]
TypeOpt = Annotated[Optional[str], typer.Option("--type", help="Same as the TYPE argument.")]
DatumPath = Annotated[
    Optional[Path],
    typer.Option("--datum", help="JSON file with explicit (relative) root data, instead of TYPE."),
]
Subset = Annotated[
    Optional[str],
    typer.Option("--E", "--parabolic", help="Parabolic subset E as simple-root indices, e.g. '1,3'."),
]


def _list(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _grid(text: str) -> Any:
    """``"1,2,4"``, ``"dyadic:START:STOP"``, ``"log:START:STOP:COUNT"`` or ``"linear:START:STOP:STEP"``."""
    head, _, rest = text.partition(":")
    if head in ("dyadic", "log", "linear") and rest:
        return {head: rest.split(":")}
    return _list(text)


def _range_grid(
    values: str | None,
    top: float | None,
    name: str,
    *,
    bottom: float | None = None,
    dyadic: bool = False,
    step: float | None = None,
) -> Any:
    """Grid from an explicit --NAME or from --NAMEmax (with --dyadic or --step).

    ``--NAMEmax`` alone is a single point; with ``--dyadic`` it runs
    bottom, 2·bottom, … ≤ top (bottom defaults to 2); with ``--step`` it runs
    bottom, bottom + step, … ≤ top (bottom defaults to step).
    """
    if values is not None:
        if top is not None or dyadic or step is not None:
            raise typer.BadParameter(f"--{name} is an explicit grid; drop --{name}max, --dyadic and --step")
        return _grid(values)
    if top is None:
        raise typer.BadParameter(f"one of --{name} or --{name}max is required")
    if dyadic and step is not None:
        raise typer.BadParameter("--dyadic and --step are exclusive")
    if dyadic:
        return {"dyadic": [bottom if bottom is not None else 2.0, top]}
    if step is not None:
        return {"linear": [bottom if bottom is not None else step, top, step]}
    return [top]


def _datum_params(
    type_: str | None, datum: Path | None, type_opt: str | None = None
) -> dict[str, Any]:
    if type_ is not None and type_opt is not None and type_ != type_opt:
        raise typer.BadParameter(f"TYPE {type_!r} conflicts with --type {type_opt!r}")
    type_ = type_ if type_ is not None else type_opt
    if datum is not None:
        return {"datum_path": str(datum)}
    if type_ is None:
        return {}
    return {"type": type_}


def _config() -> ConfigManager:
    path = state["config_path"]
    return ConfigManager(path) if path is not None else get_config_manager()


def _fail(e: Exception, code: int, message: str | None = None) -> None:
    report: ErrorReport = {
        "error": {"kind": type(e).__name__, "message": message if message is not None else str(e)}
    }
    typer.echo(dumps_json(report), nl=False)
    raise typer.Exit(code)


def _execute(
    build: ExperimentManifest | str,
    params: dict[str, Any] | None = None,
    *,
    seed: int | None = None,
    out: Path | None = None,
    fmt: str = "json",
    jobs: int | None = None,
) -> None:
    """Run one manifest end to end, mapping failures to exit codes."""
    try:
        if fmt not in FORMATS:
            raise ValueError(f"Unsupported format {fmt!r}; expected one of {FORMATS}")
        if isinstance(build, ExperimentManifest):
            manifest = build
        else:
            params = {k: v for k, v in (params or {}).items() if v is not None}
            manifest = ExperimentManifest.from_dict({"kind": build, "params": params, "seed": seed})
        config = _config()
        if jobs is not None:
            config = config.with_overrides(runtime={"jobs": jobs})
        record = run_experiment(manifest, config)
        text = emit(record, fmt, out)
    except ValueError as e:
        logger.debug("validation error", exc_info=True)
        _fail(e, 1)
    except Exception as e:  # noqa: BLE001
        logger.exception("runtime error")
        _fail(e, 2)
    else:
        if out is None:
            typer.echo(text, nl=False)


@app.callback()
def main(
    config: Annotated[
        Optional[Path],
        typer.Option("--config", help="YAML settings file; overrides HOROCONE_CONFIG."),
    ] = None,
) -> None:
    """Set up logging (HOROCONE_LOG) and the settings source."""
    state["config_path"] = config
    try:
        configure_logging()
    except RuntimeError as e:
        _fail(e, 2)


# ----------------
# Root data
# ----------------


@app.command("rootsys")
def rootsys_cmd(
    type_: TypeArg = None,
    type_opt: TypeOpt = None,
    datum: DatumPath = None,
    metric_scale: Annotated[str, typer.Option(help="Positive rational scale of the gram matrix.")] = "1",
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Simple roots, coroots, weights, Cartan matrix, k_α and every ρ'_F."""
    params = {**_datum_params(type_, datum, type_opt), "metric_scale": metric_scale}
    _execute("rootsys", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@app.command("classify")
def classify_cmd(
    type_: TypeArg = None,
    type_opt: TypeOpt = None,
    datum: DatumPath = None,
    E: Subset = None,
    theta: Annotated[
        Optional[str],
        typer.Option("--theta", "--cochar", help="Cocharacter as rationals, e.g. '6,7,-12,9,-10'."),
    ] = None,
    behavior: Annotated[
        Optional[str],
        typer.Option(help="Behaviour profile instead of a ray, e.g. '1=ToZero,2=One'."),
    ] = None,
    F: Annotated[
        Optional[str], typer.Option("--F", help="Also run the absolute-continuity checklist for F.")
    ] = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Classify the limit of a translated horospherical measure."""
    profile = None
    if behavior is not None:
        profile = dict(item.split("=", 1) for item in _list(behavior) if "=" in item)
    params = {
        **_datum_params(type_, datum, type_opt),
        "E": _list(E),
        "theta": theta,
        "behavior": profile,
        "F": _list(F),
    }
    _execute("classify", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


# ----------------
# Asymptotics
# ----------------


@asym_app.command("gm")
def gm_cmd(
    m: Annotated[int, typer.Option(help="Index m ≥ −1.")],
    x: Annotated[str, typer.Option(help="Grid of x values: list, dyadic:A:B or log:A:B:N.")],
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """g_m(x) in log space, with the normalised ḡ_m."""
    _execute("asym.gm", {"m": m, "x": _grid(x)}, seed=seed, out=out, fmt=fmt, jobs=jobs)


@asym_app.command("ball")
def ball_cmd(
    v0: Annotated[str, typer.Option("--v0", "--v", help="Nonzero vector, e.g. '1,0,0'.")],
    R: Annotated[str, typer.Option("--R", help="Grid of radii.")],
    dim: Annotated[
        Optional[int], typer.Option("--dim", help="Dimension n; must match the length of v0.")
    ] = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """∫ e^{⟨v0,y⟩} over balls of radius R against its asymptote."""
    params = {"v0": _list(v0), "n": dim, "R": _grid(R)}
    _execute("asym.ball", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@asym_app.command("region")
def region_cmd(
    m: Annotated[str, typer.Option(help="Exponents m_α, e.g. '2,2'.")],
    c: Annotated[str, typer.Option(help="Line bundle coefficients c_α, e.g. '1,1'.")],
    T: Annotated[str, typer.Option("--T", help="Grid of height bounds.")],
    y: Annotated[Optional[str], typer.Option(help="Orthant shift, defaults to 0.")] = None,
    mode: Annotated[str, typer.Option(help="grid or monte_carlo.")] = "grid",
    samples: Annotated[int, typer.Option(help="Monte-Carlo sample count.")] = 100_000,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Volume growth of {x ≥ y, Σ c x ≤ log T} weighted by e^{Σ m x}."""
    params = {
        "m": _list(m),
        "c": _list(c),
        "T": _grid(T),
        "y": _list(y),
        "mode": mode,
        "samples": samples,
    }
    _execute("asym.region", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


# ----------------
# Counting
# ----------------

Fit = Annotated[
    Optional[str],
    typer.Option(help="Growth model: power, power_log, exponential or none."),
]


def _fit_param(fit: str | None) -> dict[str, Any]:
    return {} if fit is None else {"fit": fit}


@count_app.command("exponents")
def exponents_cmd(
    type_: TypeArg = None,
    type_opt: TypeOpt = None,
    datum: DatumPath = None,
    E: Subset = None,
    c: Annotated[str, typer.Option(help="c_α for α ∉ E in increasing index order.")] = "",
    F: Annotated[Optional[str], typer.Option("--F", help="Also report (a_F, b_F) for F.")] = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Exact counting exponents (a, F_χ, b) of a line bundle."""
    params = {**_datum_params(type_, datum, type_opt), "E": _list(E), "c": _list(c), "F": _list(F)}
    _execute("count.exponents", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


THeights = Annotated[
    Optional[str], typer.Option("--T", help="Grid of height bounds: list, dyadic:A:B or log:A:B:N.")
]
TMax = Annotated[Optional[float], typer.Option("--Tmax", help="Largest height bound, instead of --T.")]
TMin = Annotated[Optional[float], typer.Option("--Tmin", help="Smallest bound with --dyadic (2).")]
Dyadic = Annotated[bool, typer.Option("--dyadic", help="Bounds Tmin, 2·Tmin, … up to Tmax.")]


@count_app.command("projective")
def projective_cmd(
    n: Annotated[int, typer.Option(help="Count points of P^{n−1}(Q).")],
    T: THeights = None,
    T_max: TMax = None,
    T_min: TMin = None,
    dyadic: Dyadic = False,
    strategy: Annotated[str, typer.Option(help="sieve or exhaustive.")] = "sieve",
    cross_check: Annotated[bool, typer.Option(help="Recount with the other strategy.")] = False,
    fit: Fit = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Rational points of bounded Euclidean height in projective space."""
    grid = _range_grid(T, T_max, "T", bottom=T_min, dyadic=dyadic)
    params = {"n": n, "T": grid, "strategy": strategy, "cross_check": cross_check, **_fit_param(fit)}
    _execute("count.projective", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@count_app.command("flags")
def flags_cmd(
    c: Annotated[str, typer.Option(help="Exponents c1,c2 of the line and plane heights.")],
    T: THeights = None,
    T_max: TMax = None,
    T_min: TMin = None,
    dyadic: Dyadic = False,
    strategy: Annotated[str, typer.Option(help="v_outer, w_outer or balanced.")] = "balanced",
    fit: Fit = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Rational flags in Q³ of bounded height H(line)^{c1} H(plane)^{c2}."""
    grid = _range_grid(T, T_max, "T", bottom=T_min, dyadic=dyadic)
    params = {"c": _list(c), "T": grid, "strategy": strategy, **_fit_param(fit)}
    _execute("count.flags", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@count_app.command("horocycles")
def horocycles_cmd(
    R: Annotated[Optional[str], typer.Option("--R", help="Grid of distances.")] = None,
    R_max: Annotated[
        Optional[float], typer.Option("--Rmax", help="Largest distance, instead of --R.")
    ] = None,
    R_min: Annotated[
        Optional[float], typer.Option("--Rmin", help="Smallest distance with --step (step).")
    ] = None,
    step: Annotated[
        Optional[float], typer.Option("--step", help="Distances Rmin, Rmin + step, … up to Rmax.")
    ] = None,
    strategy: Annotated[str, typer.Option(help="sieve or enumerate.")] = "sieve",
    fit: Fit = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Lifts of the closed horocycle on the modular surface within distance R of i."""
    grid = _range_grid(R, R_max, "R", bottom=R_min, step=step)
    params = {"R": grid, "strategy": strategy, **_fit_param(fit)}
    _execute("count.horocycles", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@count_app.command("fit")
def fit_cmd(
    series: Annotated[
        Optional[Path], typer.Argument(help="CSV with a 'T,N' or 'R,N' header.")
    ] = None,
    series_opt: Annotated[
        Optional[Path], typer.Option("--in", help="Same as the SERIES argument.")
    ] = None,
    model: Annotated[Optional[str], typer.Option(help="power, power_log or exponential.")] = None,
    a: Annotated[Optional[str], typer.Option(help="Known exponent a for power_log.")] = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Fit a growth model to a count series written by another command."""
    if (series is None) == (series_opt is None):
        raise typer.BadParameter("give the series CSV either as SERIES or with --in")
    params = {"csv": str(series or series_opt), "model": model, "a": a}
    _execute("count.fit", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@count_app.command("xi")
def xi_cmd(
    s: Annotated[float, typer.Option(help="Exponent of the height series.")],
    q_max: Annotated[int, typer.Option("--Q-max", help="Largest c²+d² summed.")],
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Dyadic shell masses of Σ (c²+d²)^{−s} over coprime pairs."""
    _execute("count.xi", {"s": s, "Q_max": q_max}, seed=seed, out=out, fmt=fmt, jobs=jobs)


# ----------------
# Simulation
# ----------------


@sim_app.command("horocycle")
def sim_horocycle_cmd(
    y0: Annotated[float, typer.Option(help="Height of the closed horocycle, 0 < y0.")],
    N: Annotated[int, typer.Option("--N", help="Number of equally spaced points.")],
    h: Annotated[str, typer.Option(help="Cusp thresholds h ≥ 1.")] = "2",
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Cusp mass of a long closed horocycle, against the area prediction."""
    _execute(
        "sim.horocycle", {"y0": y0, "N": N, "h": _grid(h)}, seed=seed, out=out, fmt=fmt, jobs=jobs
    )


@sim_app.command("sl3")
def sim_sl3_cmd(
    theta: Annotated[str, typer.Option(help="Trace-zero cocharacter, e.g. '1,0,-1'.")],
    t: Annotated[str, typer.Option(help="Grid of translation times.")],
    N: Annotated[int, typer.Option("--N", help="Samples per time.")],
    stat: Annotated[str, typer.Option(help="siegel, escape or lambda1.")] = "siegel",
    eps: Annotated[Optional[float], typer.Option(help="Escape threshold in (0, 1).")] = None,
    r: Annotated[Optional[float], typer.Option(help="Siegel ball radius.")] = None,
    volume: Annotated[Optional[float], typer.Option(help="Siegel ball volume, instead of r.")] = None,
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Statistics of translated unipotent orbits in SL₃(R)/SL₃(Z)."""
    params = {
        "theta": theta,
        "t": _grid(t),
        "N": N,
        "stat": stat,
        "eps": eps,
        "r": r,
        "volume": volume,
    }
    _execute("sim.sl3", params, seed=seed, out=out, fmt=fmt, jobs=jobs)


@app.command("run")
def run_cmd(
    manifest: Annotated[Path, typer.Argument(help="JSON or YAML experiment manifest.")],
    out: Out = None,
    fmt: Format = "json",
    seed: Seed = None,
    jobs: Jobs = None,
) -> None:
    """Execute a manifest file; --seed overrides the manifest's seed."""
    try:
        loaded = load_manifest(manifest)
    except ValueError as e:
        _fail(e, 1)
    if seed is not None:
        loaded = ExperimentManifest.from_dict({**loaded.to_dict(), "seed": seed})
    _execute(loaded, out=out, fmt=fmt, jobs=jobs)
