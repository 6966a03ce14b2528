"""Settings loader for horocone.

Reads an optional YAML settings file, validates it and exposes typed sections.
When no file is given, every section falls back to its defaults.
"""

from __future__ import annotations

from dataclasses import fields
from pathlib import Path
from typing import Any, Union

import yaml

from .schema import validate_config_schema
from .settings import (
    EnumerationSettings,
    FittingSettings,
    NumericsSettings,
    RuntimeSettings,
    Settings,
    SimulationSettings,
)

_SECTION_TYPES = {
    "numerics": NumericsSettings,
    "enumeration": EnumerationSettings,
    "fitting": FittingSettings,
    "simulation": SimulationSettings,
    "runtime": RuntimeSettings,
}


class ConfigManager:
    """Manage access to the settings defined in a YAML file.

    Args:
        config_path: Path to the YAML settings file, or None for defaults.
    """

    def __init__(self, config_path: Union[str, Path, None] = None):
        self.config_path = Path(config_path) if config_path is not None else None
        self._data = self._load_yaml()
        validate_config_schema(self._data)
        self._settings = self._build(self._data)

    def _load_yaml(self) -> dict[str, Any]:
        if self.config_path is None:
            return {}
        with open(self.config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
        return data if data is not None else {}

    @staticmethod
    def _build(data: dict[str, Any]) -> Settings:
        sections = {}
        for name, cls in _SECTION_TYPES.items():
            body = data.get(name) or {}
            known = {f.name for f in fields(cls)}
            sections[name] = cls(**{k: v for k, v in body.items() if k in known})
        return Settings(**sections)

    @property
    def raw(self) -> dict[str, Any]:
        """Return raw loaded YAML data."""
        return self._data

    @property
    def settings(self) -> Settings:
        return self._settings

    def with_overrides(self, **sections: dict[str, Any]) -> "ConfigManager":
        """Return a copy whose sections are updated with the given keys.

        Overrides go through the same schema validation as file contents.
        Used by the CLI for flags such as ``--jobs``.
        """
        merged = {k: dict(v or {}) for k, v in self._data.items()}
        for name, body in sections.items():
            merged.setdefault(name, {}).update(body)
        validate_config_schema(merged)
        clone = object.__new__(ConfigManager)
        clone.config_path = self.config_path
        clone._data = merged
        clone._settings = self._build(merged)
        return clone

    @property
    def numerics(self) -> NumericsSettings:
        return self._settings.numerics

    @property
    def enumeration(self) -> EnumerationSettings:
        return self._settings.enumeration

    @property
    def fitting(self) -> FittingSettings:
        return self._settings.fitting

    @property
    def simulation(self) -> SimulationSettings:
        return self._settings.simulation

    @property
    def runtime(self) -> RuntimeSettings:
        return self._settings.runtime
