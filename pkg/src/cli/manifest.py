"""Experiment manifests and result records.

A manifest names one experiment kind and its parameters; exact rationals
travel as "p/q" strings and grids either as explicit lists or as
``{"dyadic": [start, stop]}``, ``{"log": [start, stop, count]}`` or
``{"linear": [start, stop, step]}``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

import yaml

from src.countlab.fitting import dyadic_grid, linear_grid, log_grid

logger = logging.getLogger(__name__)

ARTIFACT_VERSION = "0.1.0"

KINDS = (
    "rootsys",
    "classify",
    "asym.gm",
    "asym.ball",
    "asym.region",
    "count.exponents",
    "count.projective",
    "count.flags",
    "count.horocycles",
    "count.fit",
    "count.xi",
    "sim.horocycle",
    "sim.sl3",
)


class ManifestError(ValueError):
    """Raised when a manifest is malformed or fails its kind's preconditions."""


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class ExperimentManifest:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    version: str = ARTIFACT_VERSION
    timestamp: str = ""

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentManifest":
        """Build and validate a manifest.

        Raises:
            ManifestError: on unknown kinds or keys, or wrongly typed fields.
        """
        if not isinstance(data, Mapping):
            raise ManifestError("Manifest must be a mapping/object")
        unknown = set(data) - {"kind", "params", "seed", "version", "timestamp"}
        if unknown:
            raise ManifestError(f"Unknown manifest keys: {sorted(unknown)}")
        kind = data.get("kind")
        if kind not in KINDS:
            raise ManifestError(f"Unknown experiment kind {kind!r}; expected one of {KINDS}")
        params = data.get("params") or {}
        if not isinstance(params, Mapping):
            raise ManifestError("'params' must be a mapping/object")
        seed = data.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int) or seed < 0):
            raise ManifestError(f"seed must be a non-negative integer, got {seed!r}")
        return cls(
            kind,
            dict(params),
            seed,
            str(data.get("version", ARTIFACT_VERSION)),
            str(data.get("timestamp", "")),
        )

    def stamped(self) -> "ExperimentManifest":
        """A copy carrying the current UTC time."""
        return ExperimentManifest(self.kind, dict(self.params), self.seed, self.version, utc_timestamp())


@dataclass(frozen=True)
class ResultRecord:
    manifest: ExperimentManifest
    outputs: dict[str, Any]
    provenance: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "manifest": self.manifest.to_dict(),
            "outputs": self.outputs,
            "provenance": dict(self.provenance),
        }


def load_manifest(path: str | Path) -> ExperimentManifest:
    """Read a JSON (or YAML) manifest file.

    Raises:
        ManifestError: if the file cannot be parsed or fails validation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"Cannot read manifest {path}: {e}") from e
    try:
        if path.suffix in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ManifestError(f"Cannot parse manifest {path}: {e}") from e
    return ExperimentManifest.from_dict(data)


def parse_grid(value: Any, name: str) -> list[float]:
    """Expand an explicit list or a dyadic/log range into grid points.

    Raises:
        ManifestError: for empty or malformed grids.
    """
    try:
        if isinstance(value, Mapping):
            if "dyadic" in value:
                start, stop = value["dyadic"]
                points = dyadic_grid(float(start), float(stop))
            elif "log" in value:
                start, stop, count = value["log"]
                points = log_grid(float(start), float(stop), int(count))
            elif "linear" in value:
                start, stop, step = value["linear"]
                points = linear_grid(float(start), float(stop), float(step))
            else:
                raise ManifestError(f"{name}: grid mapping needs 'dyadic', 'log' or 'linear'")
        elif isinstance(value, (int, float)) and not isinstance(value, bool):
            points = [float(value)]
        else:
            points = [float(v) for v in value]
    except ManifestError:
        raise
    except (TypeError, ValueError) as e:
        raise ManifestError(f"{name}: invalid grid {value!r}: {e}") from e
    if not points:
        raise ManifestError(f"{name}: grid is empty")
    return points
