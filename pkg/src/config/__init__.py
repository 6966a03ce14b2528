"""
Config Module

This package loads horocone settings from an optional YAML file and exposes
them as typed, validated sections.
"""

from src.config.manager import ConfigManager
from src.config.schema import SchemaError
from src.config.settings import Settings

__all__ = ["ConfigManager", "SchemaError", "Settings"]
