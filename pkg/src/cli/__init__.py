"""
CLI

Experiment manifests, their execution against the computational packages,
record emission (json, csv, plotdata) and the ``horocone`` typer app.
"""

from src.cli.emit import FORMATS, emit, render, write_atomic
from src.cli.manifest import (
    ExperimentManifest,
    ManifestError,
    ResultRecord,
    load_manifest,
    parse_grid,
)
from src.cli.runner import read_series_csv, run_experiment

__all__ = [
    "FORMATS",
    "ExperimentManifest",
    "ManifestError",
    "ResultRecord",
    "emit",
    "load_manifest",
    "parse_grid",
    "read_series_csv",
    "render",
    "run_experiment",
    "write_atomic",
]
