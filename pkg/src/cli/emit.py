"""Serialize result records as JSON, CSV or raw plot columns.

All three formats are deterministic for a given record. Files are written
next to their target as ``<name>.tmp`` and moved into place with
``os.replace``, so a partially written result never appears at ``out``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from pathlib import Path
from typing import Any, Iterable

from .manifest import ResultRecord

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "plotdata")

# Output keys that hold a list of flat rows, in lookup order.
_ROW_KEYS = ("rows", "estimates", "cusp")


def dumps_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _rows(outputs: dict[str, Any]) -> list[dict[str, Any]] | None:
    for key in _ROW_KEYS:
        if isinstance(outputs.get(key), list):
            return outputs[key]
    if "xi" in outputs:
        return outputs["xi"]["shells"]
    return None


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _csv(record: ResultRecord) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    outputs = record.outputs
    if "series" in outputs:
        series = outputs["series"]
        writer.writerow([series["x_label"], "N"])
        for x, n in series["points"]:
            writer.writerow([_cell(x), _cell(n)])
        return buf.getvalue()
    rows = _rows(outputs)
    if rows is None:
        raise ValueError(f"'{record.manifest.kind}' records have no tabular output for csv")
    columns = sorted({k for row in rows for k in row})
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in columns])
    return buf.getvalue()


def _block(name: str, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> list[str]:
    lines = [f"# {name}", "# " + " ".join(header)]
    lines += [" ".join(_cell(v) for v in row) for row in rows]
    return lines + ["", ""]


def _plotdata(record: ResultRecord) -> str:
    """Whitespace-separated column blocks, separated by two blank lines."""
    outputs = record.outputs
    lines: list[str] = []
    section = outputs.get("cone_section")
    if section:
        for name in ("weyl_chamber", "dual_cone"):
            lines += _block(name, ["ray", "x", "y"], ([k + 1, *r] for k, r in enumerate(section[name])))
        if "theta" in section:
            lines += _block("theta", ["x", "y"], [section["theta"]])
    if "series" in outputs:
        series = outputs["series"]
        extra = series.get("normalized")
        header = [series["x_label"], "N"] + (["normalized"] if extra else [])
        points = [
            [x, n] + ([extra[i]] if extra else []) for i, (x, n) in enumerate(series["points"])
        ]
        lines += _block("series", header, points)
    rows = _rows(outputs)
    if rows:
        columns = sorted(k for k, v in rows[0].items() if isinstance(v, (int, float)) and not isinstance(v, bool))
        lines += _block("rows", columns, ([row.get(k) for k in columns] for row in rows))
    if not lines:
        raise ValueError(f"'{record.manifest.kind}' records have nothing to plot")
    return "\n".join(lines).rstrip("\n") + "\n"


def render(record: ResultRecord, fmt: str = "json") -> str:
    """Render ``record`` in ``fmt``.

    Raises:
        ValueError: for unsupported formats or records without matching data.
    """
    if fmt == "json":
        return dumps_json(record.to_dict())
    if fmt == "csv":
        return _csv(record)
    if fmt == "plotdata":
        return _plotdata(record)
    raise ValueError(f"Unsupported format {fmt!r}; expected one of {FORMATS}")


def write_atomic(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        tmp_path.write_text(text, encoding="utf-8")
        os.replace(tmp_path, path)
    finally:
        if tmp_path.exists():
            tmp_path.unlink()
    return path


def emit(record: ResultRecord, fmt: str = "json", out: str | Path | None = None) -> str:
    """Render ``record`` and, when ``out`` is given, write it there atomically."""
    text = render(record, fmt)
    if out is not None:
        write_atomic(out, text)
        logger.info("wrote %s output to %s", fmt, out)
    return text
