"""Read explicit (relative) root data from JSON.

Document shape::

    {
      "name": "BC1",                          # optional
      "simple_roots": [["1", "0"], ...],
      "positive_roots": [{"v": ["1", "0"], "mult": 2}, ...],
      "gram": [["1", "0"], ["0", "1"]],
      "ratios": ["1", "1/2"],                 # optional, default all 1
      "fundamental_weights": [[...], ...]     # optional, checked
    }

Entries are ints or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Mapping

from src.utils.rationals import parse_rational_list

from .datum import PositiveRoot, RootDatum, RootDatumError

logger = logging.getLogger(__name__)


def _rows(value: Any, what: str) -> list[tuple]:
    if not isinstance(value, list) or not value:
        raise RootDatumError("format", f"'{what}' must be a non-empty list of vectors")
    try:
        return [parse_rational_list(row) for row in value]
    except (TypeError, ValueError) as e:
        raise RootDatumError("format", f"'{what}' holds a non-rational entry: {e}") from e


def datum_from_mapping(data: Mapping[str, Any]) -> RootDatum:
    for key in ("simple_roots", "positive_roots", "gram"):
        if key not in data:
            raise RootDatumError("format", f"missing key '{key}'")

    simple = _rows(data["simple_roots"], "simple_roots")
    gram = _rows(data["gram"], "gram")

    positives = []
    for entry in data["positive_roots"]:
        if not isinstance(entry, Mapping) or "v" not in entry:
            raise RootDatumError("format", "positive_roots entries need a 'v' vector")
        mult = entry.get("mult", 1)
        if not isinstance(mult, int) or isinstance(mult, bool):
            raise RootDatumError("multiplicity", f"multiplicity {mult!r} is not an integer")
        positives.append(PositiveRoot(_rows([entry["v"]], "positive_roots")[0], mult))

    ratios = data.get("ratios")
    if ratios is not None:
        try:
            ratios = parse_rational_list(ratios)
        except ValueError as e:
            raise RootDatumError("format", f"'ratios' holds a non-rational entry: {e}") from e

    weights = data.get("fundamental_weights")
    if weights is not None:
        weights = _rows(weights, "fundamental_weights")

    datum = RootDatum(
        simple,
        positives,
        gram,
        ratios,
        name=str(data.get("name", "relative")),
        split=False,
        fundamental_weights=weights,
    )
    logger.debug("Loaded relative datum %r", datum)
    return datum


def load_relative_datum(path: str | Path) -> RootDatum:
    """Load and validate relative root data from a JSON file."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise RootDatumError("format", f"{path}: invalid JSON ({e})") from e
    if not isinstance(data, dict):
        raise RootDatumError("format", f"{path}: top-level value must be an object")
    return datum_from_mapping(data)
