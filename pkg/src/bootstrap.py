"""Runtime bootstrap and global state.

Locates the settings file, configures logging and hands out the process-wide
``ConfigManager``.

Environment variables supported:
- HOROCONE_CONFIG (optional): absolute/relative path to a YAML settings file
- HOROCONE_CONFIG_FILENAME: filename to look for at repo root when
  HOROCONE_CONFIG is not set (default ``horocone.yaml``)
- HOROCONE_LOG: log level name (DEBUG, INFO, ...) or number

When neither an explicit path nor a repo-root file exists, built-in defaults
are used.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from pathlib import Path

from src.config import ConfigManager

logger = logging.getLogger("horocone")

_logging_configured = False


def _project_root() -> Path:
    """Return the project root directory (one level above `src/`)."""
    return Path(__file__).resolve().parent.parent


def _find_config_file() -> Path | None:
    """Return the settings file to load, or None to run on defaults.

    Priority:
    1) If HOROCONE_CONFIG is set, use it directly; it must exist.
    2) Else, use <repo-root>/<HOROCONE_CONFIG_FILENAME> when present.
    """
    explicit_config = os.getenv("HOROCONE_CONFIG")
    if explicit_config:
        path = Path(explicit_config)
        if not path.exists():
            raise RuntimeError(f"HOROCONE_CONFIG points to a missing file: {path}")
        logger.info("Using settings at %s (HOROCONE_CONFIG env)", path)
        return path

    config_filename = os.getenv("HOROCONE_CONFIG_FILENAME", "horocone.yaml")
    config_path = _project_root() / config_filename
    if config_path.exists():
        logger.info("Using settings at %s", config_path)
        return config_path

    logger.debug("No settings file found, using built-in defaults")
    return None


@lru_cache(maxsize=1)
def get_config_manager() -> ConfigManager:
    """Return the process-wide settings manager (loaded on first use)."""
    return ConfigManager(_find_config_file())


def _resolve_level(value: str | None, fallback: str) -> int:
    if value:
        value = value.strip()
        if value.isdigit():
            return int(value)
        level = logging.getLevelName(value.upper())
        if isinstance(level, int):
            return level
    return logging.getLevelName(fallback.upper())


def configure_logging() -> None:
    """Configure root logging once, from HOROCONE_LOG or the settings file."""
    global _logging_configured
    if _logging_configured:
        return
    fallback = get_config_manager().runtime.log_level
    level = _resolve_level(os.getenv("HOROCONE_LOG"), fallback)
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    _logging_configured = True
