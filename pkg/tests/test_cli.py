from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema
import numpy as np
import pytest
import yaml
from scipy import integrate
from typer.testing import CliRunner

from src.cli import (
    ExperimentManifest,
    ManifestError,
    ResultRecord,
    emit,
    load_manifest,
    parse_grid,
    read_series_csv,
    render,
    run_experiment,
    write_atomic,
)
from src.cli import app as app_module
from src.cli.app import app
from src.countlab import count_horocycle_lifts
from src.rootsys import cone_section, split_datum
from src.utils.errors import UnsupportedError

runner = CliRunner()

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "result_record.schema.json").read_text()
)


def _invoke(*args: str):
    return runner.invoke(app, list(args))


def _without_timestamp(record: dict) -> dict:
    record = json.loads(json.dumps(record))
    record["manifest"].pop("timestamp")
    return record


# ---------
# Manifests
# ---------


def test_manifest_round_trip(tmp_path):
    manifest = ExperimentManifest(
        "classify", {"type": "A2", "theta": ["1", "0", "-1"], "E": []}, seed=3, timestamp="t"
    )
    assert ExperimentManifest.from_dict(manifest.to_dict()) == manifest

    path = tmp_path / "m.json"
    path.write_text(json.dumps(manifest.to_dict()))
    assert load_manifest(path) == manifest

    path = tmp_path / "m.yaml"
    path.write_text(yaml.safe_dump(manifest.to_dict()))
    assert load_manifest(path) == manifest


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "nope"},
        {"kind": "classify", "extra": 1},
        {"kind": "classify", "params": [1, 2]},
        {"kind": "classify", "seed": -1},
        {"kind": "classify", "seed": True},
        [1, 2],
    ],
)
def test_manifest_validation(data):
    with pytest.raises(ManifestError):
        ExperimentManifest.from_dict(data)


def test_unparsable_manifest_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    with pytest.raises(ManifestError):
        load_manifest(path)
    with pytest.raises(ManifestError):
        load_manifest(tmp_path / "missing.json")


def test_grids():
    assert parse_grid([1, "2", 4.5], "T") == [1.0, 2.0, 4.5]
    assert parse_grid({"dyadic": [2, 16]}, "T") == [2.0, 4.0, 8.0, 16.0]
    assert parse_grid({"log": [1, 100, 3]}, "T") == pytest.approx([1.0, 10.0, 100.0])
    assert parse_grid({"linear": [0.5, 2, 0.5]}, "R") == [0.5, 1.0, 1.5, 2.0]
    assert parse_grid(7, "T") == [7.0]
    bad_grids = (
        [],
        {"dyadic": [8, 2]},
        {"linear": [1, 2]},
        {"linear": [1, 2, 0]},
        {"range": [1, 2]},
        ["x"],
        {"log": [1, 2]},
    )
    for bad in bad_grids:
        with pytest.raises(ManifestError):
            parse_grid(bad, "T")


# ----------
# Execution
# ----------


def test_classify_sl5_ray_persisted_as_haar(tmp_path):
    out = tmp_path / "verdict.json"
    result = _invoke("classify", "A4", "--theta", "6,7,-12,9,-10", "--out", str(out))
    assert result.exit_code == 0, result.stdout
    record = json.loads(out.read_text())
    jsonschema.validate(instance=record, schema=SCHEMA)
    assert record["manifest"]["kind"] == "classify"
    assert record["outputs"]["verdict"]["kind"] == "Haar"
    assert record["outputs"]["verdict"]["witnesses"] == {
        "a1": "6",
        "a2": "13",
        "a3": "1",
        "a4": "10",
    }
    assert not list(tmp_path.glob("*.tmp"))


def test_classify_behavior_profile():
    result = _invoke("classify", "A2", "--behavior", "1=ToInfinity,2=One")
    assert result.exit_code == 0, result.stdout
    verdict = json.loads(result.stdout)["outputs"]["verdict"]
    assert verdict["kind"] == "ConvergesTo"
    assert verdict["F"] == [1]


def test_classify_with_abs_cont_checklist():
    result = _invoke("classify", "A2", "--theta", "1,0,-1", "--F", "1,2")
    assert result.exit_code == 0, result.stdout
    outputs = json.loads(result.stdout)["outputs"]
    assert outputs["verdict"]["kind"] == "Haar"
    assert "abs_cont" in outputs


def test_empty_grid_is_validation_error(tmp_path):
    out = tmp_path / "counts.json"
    result = _invoke("count", "projective", "--n", "2", "--T", "", "--out", str(out))
    assert result.exit_code == 1
    error = json.loads(result.stdout)["error"]
    assert error["kind"] == "ManifestError"
    assert "empty" in error["message"]
    assert not out.exists()


def test_domain_error_writes_nothing(tmp_path):
    out = tmp_path / "verdict.json"
    result = _invoke("classify", "A2", "--theta", "1,-1", "--out", str(out))
    assert result.exit_code == 1
    assert json.loads(result.stdout)["error"]["kind"] == "ValueError"
    assert not out.exists()


def test_unsupported_format():
    result = _invoke("count", "xi", "--s", "2", "--Q-max", "64", "--format", "xml")
    assert result.exit_code == 1
    assert "xml" in json.loads(result.stdout)["error"]["message"]


def test_runtime_error_exit_code(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("worker died")

    monkeypatch.setattr(app_module, "run_experiment", boom)
    result = _invoke("count", "xi", "--s", "2", "--Q-max", "64")
    assert result.exit_code == 2
    assert json.loads(result.stdout) == {"error": {"kind": "RuntimeError", "message": "worker died"}}


def test_bad_jobs_rejected():
    result = _invoke("count", "xi", "--s", "2", "--Q-max", "64", "--jobs", "0")
    assert result.exit_code == 1
    assert json.loads(result.stdout)["error"]["kind"] == "SchemaError"


def test_rerun_is_identical_except_timestamp(tmp_path):
    args = ["sim", "sl3", "--theta=1,0,-1", "--t", "2", "--N", "40", "--volume", "10", "--seed", "5"]
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert _invoke(*args, "--out", str(first)).exit_code == 0
    assert _invoke(*args, "--jobs", "2", "--out", str(second)).exit_code == 0
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert _without_timestamp(a) == _without_timestamp(b)
    assert a["manifest"]["seed"] == 5


def test_run_manifest_file(tmp_path):
    path = tmp_path / "xi.json"
    path.write_text(json.dumps({"kind": "count.xi", "params": {"s": 2, "Q_max": 4096}}))
    result = _invoke("run", str(path))
    assert result.exit_code == 0, result.stdout
    record = json.loads(result.stdout)
    jsonschema.validate(instance=record, schema=SCHEMA)
    assert record["outputs"]["xi"]["status"] == "Converges"


def test_run_rejects_bad_manifest(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "count.xi", "params": {"s": 2}}))
    result = _invoke("run", str(path))
    assert result.exit_code == 1
    assert "Q_max" in json.loads(result.stdout)["error"]["message"]


def test_oracle_provenance():
    record = run_experiment(
        ExperimentManifest("sim.horocycle", {"y0": 0.01, "N": 200, "h": [2, 4]})
    )
    assert record.provenance == {"cusp_mass": "cusp_area"}
    assert [r["h"] for r in record.outputs["cusp"]] == [2.0, 4.0]

    record = run_experiment(
        ExperimentManifest("sim.sl3", {"theta": "1,0,-1", "t": [1], "N": 10}, seed=1)
    )
    assert record.provenance == {"siegel": "siegel_mean_value"}
    assert record.outputs["rows"][0]["oracle"] == "siegel_mean_value"


def test_sim_escape_and_lambda1():
    base = {"theta": "-1,0,1", "t": [4], "N": 30}
    escape = run_experiment(ExperimentManifest("sim.sl3", {**base, "stat": "escape"}, seed=2))
    assert 0.0 <= escape.outputs["rows"][0]["value"] <= 1.0
    assert escape.provenance == {}
    quantiles = run_experiment(ExperimentManifest("sim.sl3", {**base, "stat": "lambda1"}, seed=2))
    values = list(quantiles.outputs["rows"][0]["quantiles"].values())
    assert values == sorted(values)
    with pytest.raises(ManifestError):
        run_experiment(ExperimentManifest("sim.sl3", {**base, "stat": "median"}))


def test_exponents_command():
    result = _invoke("count", "exponents", "A2", "--c", "1,2", "--F", "1,2")
    assert result.exit_code == 0, result.stdout
    outputs = json.loads(result.stdout)["outputs"]
    assert outputs["exponents"]["a"] == "2"
    assert outputs["exponents"]["b"] == 1
    assert outputs["partial"]["a_F"] == "2"

    result = _invoke("count", "exponents", "A2", "--c", "1/2,2")
    assert result.exit_code == 1


def test_gm_and_ball_commands():
    result = _invoke("asym", "gm", "--m", "1", "--x", "1,2")
    assert result.exit_code == 0, result.stdout
    rows = json.loads(result.stdout)["outputs"]["rows"]
    assert rows[0]["g_m"] == pytest.approx(math.exp(rows[0]["log_g_m"]))

    result = _invoke("asym", "ball", "--v0", "1,0", "--R", "dyadic:1:64", "--format", "csv")
    assert result.exit_code == 0, result.stdout
    header, *lines = result.stdout.strip().splitlines()
    assert "ratio" in header.split(",")
    assert len(lines) == 7


def test_region_command_fits_anticanonical_growth():
    manifest = ExperimentManifest(
        "asym.region", {"m": [2, 2], "c": [1, 1], "T": {"dyadic": [16, 2**20]}}
    )
    record = run_experiment(manifest)
    assert len(record.outputs["estimates"]) == 17
    fit = record.outputs["fit"]
    assert fit["exponents"]["a"] == pytest.approx(2.0)
    assert fit["exponents"]["b"] == pytest.approx(2.0, abs=0.3)



# --------------------------
# Documented command lines
# --------------------------


def test_classify_with_named_options():
    result = _invoke("classify", "--type", "A4", "--cochar", "6,7,-12,9,-10", "--parabolic", "")
    assert result.exit_code == 0, result.stdout
    verdict = json.loads(result.stdout)["outputs"]["verdict"]
    assert verdict["kind"] == "Haar"
    assert verdict["witnesses"] == {"a1": "6", "a2": "13", "a3": "1", "a4": "10"}


def test_type_argument_and_option_must_agree():
    assert _invoke("rootsys", "--type", "B2").exit_code == 0
    result = _invoke("classify", "A2", "--type", "A4", "--cochar", "1,0,-1")
    assert result.exit_code == 1
    assert json.loads(result.stdout)["error"]["kind"] == "BadParameter"


def test_projective_dyadic_up_to_tmax():
    result = _invoke("count", "projective", "--n", "3", "--Tmax", "512", "--dyadic")
    assert result.exit_code == 0, result.stdout
    series = json.loads(result.stdout)["outputs"]["series"]
    assert [T for T, _ in series["points"]] == [2.0**k for k in range(1, 10)]
    assert series["fit"]["model"] == "power_log"
    assert series["fit"]["exponents"]["a"] == pytest.approx(3.0, abs=0.05)


def test_horocycles_linear_up_to_rmax():
    result = _invoke("count", "horocycles", "--Rmax", "14", "--step", "0.5")
    assert result.exit_code == 0, result.stdout
    series = json.loads(result.stdout)["outputs"]["series"]
    Rs = [R for R, _ in series["points"]]
    assert len(Rs) == 28
    assert Rs[0] == 0.5 and Rs[-1] == 14.0
    assert series["points"][-1][1] == count_horocycle_lifts(14.0)
    assert series["fit"]["exponents"]["c"] == pytest.approx(1.0, abs=0.1)


def test_fit_reads_series_given_with_in(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    args = ["count", "projective", "--n", "3", "--Tmax", "512", "--dyadic"]
    written = _invoke(*args, "--format", "csv", "--out", "series.csv")
    assert written.exit_code == 0, written.stdout
    result = _invoke("count", "fit", "--in", "series.csv", "--model", "power_log")
    assert result.exit_code == 0, result.stdout
    fit = json.loads(result.stdout)["outputs"]["series"]["fit"]
    assert fit["model"] == "power_log"
    assert fit["window"] == [32.0, 512.0]


def test_asym_command_lines():
    result = _invoke("asym", "gm", "--m", "5", "--x", "12.5")
    assert result.exit_code == 0, result.stdout
    (row,) = json.loads(result.stdout)["outputs"]["rows"]
    quad, _ = integrate.quad(lambda s: (1 - s * s) ** 2.5 * math.exp(12.5 * s), -1, 1)
    assert row["g_m"] == pytest.approx(quad, rel=1e-7)

    result = _invoke("asym", "ball", "--dim", "3", "--v", "1,0,0", "--R", "20")
    assert result.exit_code == 0, result.stdout
    (row,) = json.loads(result.stdout)["outputs"]["rows"]
    # 2π((R − 1)e^R + (R + 1)e^{−R}) against 2πR e^R
    assert row["n"] == 3
    assert row["ratio"] == pytest.approx(19 / 20 + 21 / 20 * math.exp(-40), rel=1e-9)

    result = _invoke("asym", "region", "--m", "2,2", "--c", "1,2", "--T", "1e6", "--mode", "grid")
    assert result.exit_code == 0, result.stdout
    outputs = json.loads(result.stdout)["outputs"]
    (estimate,) = outputs["estimates"]
    assert estimate["T"] == 1e6 and estimate["mode"] == "grid"
    assert estimate["value"] > 0
    assert outputs["fit"] is None


def test_ball_dimension_must_match_vector():
    result = _invoke("asym", "ball", "--dim", "2", "--v", "1,0,0", "--R", "20")
    assert result.exit_code == 1


def test_sim_horocycle_command_line():
    result = _invoke("sim", "horocycle", "--y0", "4.5e-5", "--N", "100000", "--h", "2")
    assert result.exit_code == 0, result.stdout
    record = json.loads(result.stdout)
    (cusp,) = record["outputs"]["cusp"]
    assert cusp["n_samples"] == 100_000
    assert cusp["expected"] == pytest.approx(3 / (2 * math.pi))
    assert 0.0 <= cusp["value"] <= 1.0
    assert record["provenance"] == {"cusp_mass": "cusp_area"}


@pytest.mark.slow
def test_sim_sl3_command_line():
    args = ["sim", "sl3", "--theta", "1,0,-1", "--t", "10", "--N", "20000"]
    result = _invoke(*args, "--stat", "siegel", "--r", "1.337", "--seed", "42")
    assert result.exit_code == 0, result.stdout
    record = json.loads(result.stdout)
    (row,) = record["outputs"]["rows"]
    assert row["n_samples"] == 20_000
    assert row["expected"] == pytest.approx(4 / 3 * math.pi * 1.337**3, rel=1e-9)
    assert record["manifest"]["seed"] == 42


@pytest.mark.slow
def test_flags_single_bound():
    result = _invoke("count", "flags", "--c", "2,2", "--Tmax", "1e5")
    assert result.exit_code == 0, result.stdout
    series = json.loads(result.stdout)["outputs"]["series"]
    ((T, N),) = series["points"]
    assert T == 1e5 and N > 0
    assert series["fit"] is None


@pytest.mark.parametrize(
    "args, kind",
    [
        (("count", "projective", "--n", "3", "--Tmaxx", "512"), "NoSuchOption"),
        (("count", "projective", "--n", "3"), "BadParameter"),
        (("count", "projective", "--n", "3", "--T", "2,4", "--Tmax", "8"), "BadParameter"),
        (("count", "horocycles", "--Rmax", "4", "--step", "1", "--dyadic"), "NoSuchOption"),
        (("count", "flags", "--Tmax", "8"), "MissingParameter"),
        (("asym", "gm", "--m", "five", "--x", "1"), "BadParameter"),
        (("count", "fit", "a.csv", "--in", "b.csv"), "BadParameter"),
        (("count", "fit"), "BadParameter"),
        (("nope",), "UsageError"),
    ],
)
def test_usage_errors_exit_one(args, kind):
    result = _invoke(*args)
    assert result.exit_code == 1, result.stdout
    assert json.loads(result.stdout)["error"]["kind"] == kind

# ------
# Emit
# ------


def test_csv_series_round_trips_through_fit(tmp_path):
    csv_path = tmp_path / "p1.csv"
    json_path = tmp_path / "p1.json"
    args = ["count", "projective", "--n", "2", "--T", "dyadic:64:4096", "--fit", "power"]
    assert _invoke(*args, "--out", str(json_path)).exit_code == 0
    assert _invoke(*args, "--format", "csv", "--out", str(csv_path)).exit_code == 0
    assert csv_path.read_text().splitlines()[0] == "T,N"

    series = read_series_csv(csv_path)
    direct = json.loads(json_path.read_text())["outputs"]["series"]
    assert [list(p) for p in series.points] == direct["points"]

    result = _invoke("count", "fit", str(csv_path), "--model", "power")
    assert result.exit_code == 0, result.stdout
    refit = json.loads(result.stdout)["outputs"]["series"]["fit"]
    assert refit["exponents"]["a"] == pytest.approx(direct["fit"]["exponents"]["a"], rel=1e-12)
    assert refit["exponents"]["a"] == pytest.approx(2.0, abs=0.05)


def test_horocycle_series_csv_header(tmp_path):
    out = tmp_path / "h.csv"
    result = _invoke("count", "horocycles", "--R", "2,4,6", "--format", "csv", "--out", str(out))
    assert result.exit_code == 0, result.stdout
    assert out.read_text().splitlines()[0] == "R,N"


def test_fit_needs_enough_points(tmp_path):
    out = tmp_path / "short.csv"
    out.write_text("T,N\n2,3\n4,9\n")
    result = _invoke("count", "fit", str(out))
    assert result.exit_code == 1


def _plot_blocks(text: str) -> dict[str, list[list[float]]]:
    blocks: dict[str, list[list[float]]] = {}
    for chunk in text.strip().split("\n\n\n"):
        lines = chunk.strip().splitlines()
        name = lines[0].lstrip("# ")
        blocks[name] = [[float(v) for v in line.split()] for line in lines[2:]]
    return blocks


def test_a2_plotdata_cone_rays():
    result = _invoke("rootsys", "A2", "--format", "plotdata")
    assert result.exit_code == 0, result.stdout
    blocks = _plot_blocks(result.stdout)
    chamber = np.array([row[1:] for row in blocks["weyl_chamber"]])
    dual = np.array([row[1:] for row in blocks["dual_cone"]])
    assert chamber.shape == dual.shape == (2, 2)

    # Chamber rays sit strictly inside the dual cone.
    coeffs = np.linalg.solve(dual.T, chamber.T)
    assert np.all(coeffs > 1e-9)
    angle = lambda rays: math.acos(float(rays[0] @ rays[1]))  # noqa: E731
    assert angle(chamber) == pytest.approx(math.pi / 3)
    assert angle(dual) == pytest.approx(2 * math.pi / 3)


def test_cone_section_places_theta_by_pairing(a2):
    section = cone_section(a2, a2.coroot(1))
    theta = np.array(section["theta"])
    # (λ1, α1∨) = 1 and (λ2, α1∨) = 0: θ lies on the dual-cone ray of α1.
    assert theta / np.linalg.norm(theta) == pytest.approx(np.array(section["dual_cone"][0]))
    with pytest.raises(UnsupportedError):
        cone_section(split_datum("A3"))


def test_plotdata_for_series_and_unsupported_records():
    record = run_experiment(ExperimentManifest("count.horocycles", {"R": [1, 2, 3]}))
    blocks = _plot_blocks(render(record, "plotdata"))
    assert [row[0] for row in blocks["series"]] == [1.0, 2.0, 3.0]
    assert len(blocks["series"][0]) == 3

    bare = ResultRecord(ExperimentManifest("count.exponents"), {"exponents": {}})
    for fmt in ("csv", "plotdata", "yaml"):
        with pytest.raises(ValueError):
            render(bare, fmt)


def test_json_is_deterministic(tmp_path):
    record = run_experiment(ExperimentManifest("rootsys", {"type": "B2"}))
    text = emit(record, "json", tmp_path / "b2.json")
    assert text == (tmp_path / "b2.json").read_text()
    assert text == render(record, "json")
    assert list(json.loads(text)) == ["manifest", "outputs", "provenance"]
    jsonschema.validate(instance=json.loads(text), schema=SCHEMA)


def test_write_atomic_replaces(tmp_path):
    target = tmp_path / "nested" / "out.txt"
    write_atomic(target, "one")
    write_atomic(target, "two")
    assert target.read_text() == "two"
    assert [p.name for p in target.parent.iterdir()] == ["out.txt"]
