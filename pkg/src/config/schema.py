"""Schema validation for the YAML settings file.

The settings document is a mapping of sections (``numerics``, ``enumeration``,
``fitting``, ``simulation``, ``runtime``); every section and every key is
optional. Validation checks:
- the top level is a mapping and contains no unknown sections
- each section is a mapping with no unknown keys
- each value has the expected type and sign
"""

from __future__ import annotations

from typing import Any, Callable

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SchemaError(ValueError):
    """Raised when the YAML settings structure is invalid."""


def _positive_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def _positive_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value > 0


def _nonnegative_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def _log_level(value: Any) -> bool:
    return isinstance(value, str) and value.upper() in LOG_LEVELS


_Check = tuple[Callable[[Any], bool], str]

SECTIONS: dict[str, dict[str, _Check]] = {
    "numerics": {
        "bessel_crossover": (_positive_number, "a positive number"),
        "grid_rel_tol": (_positive_number, "a positive number"),
        "grid_max_points": (_positive_int, "a positive integer"),
        "gm_series_max_terms": (_positive_int, "a positive integer"),
    },
    "enumeration": {
        "max_candidates": (_positive_int, "a positive integer"),
        "block_size": (_positive_int, "a positive integer"),
    },
    "fitting": {
        "min_points": (_positive_int, "a positive integer"),
        "snap_max_denominator": (_positive_int, "a positive integer"),
        "snap_tolerance": (_positive_number, "a positive number"),
    },
    "simulation": {
        "default_seed": (_nonnegative_int, "a non-negative integer"),
        "reduction_max_iter": (_positive_int, "a positive integer"),
    },
    "runtime": {
        "jobs": (_positive_int, "a positive integer"),
        "log_level": (_log_level, "one of " + ", ".join(LOG_LEVELS)),
    },
}


def validate_config_schema(data: dict[str, Any]) -> None:
    """Validate a loaded settings document.

    Raises:
        SchemaError: on structural issues; the message names the offending
            ``section.key`` path.
    """
    if not isinstance(data, dict):
        raise SchemaError("Top-level YAML must be a mapping/object")

    for section, body in data.items():
        if section not in SECTIONS:
            raise SchemaError(f"Unknown settings section '{section}'")
        if body is None:
            continue
        if not isinstance(body, dict):
            raise SchemaError(f"'{section}' must be a mapping/object")
        checks = SECTIONS[section]
        for key, value in body.items():
            if key not in checks:
                raise SchemaError(f"Unknown key '{section}.{key}'")
            predicate, expected = checks[key]
            if not predicate(value):
                raise SchemaError(f"{section}.{key} must be {expected}, got {value!r}")
