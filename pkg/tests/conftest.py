from __future__ import annotations

import pytest

from src.config import ConfigManager
from src.rootsys import split_datum


@pytest.fixture(scope="session")
def a1():
    return split_datum("A1")


@pytest.fixture(scope="session")
def a2():
    return split_datum("A2")


@pytest.fixture(scope="session")
def a3():
    return split_datum("A3")


@pytest.fixture(scope="session")
def a4():
    return split_datum("A4")


@pytest.fixture
def config():
    """Default settings, independent of any horocone.yaml on disk."""
    return ConfigManager(None)


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch):
    monkeypatch.delenv("HOROCONE_CONFIG", raising=False)
    monkeypatch.delenv("HOROCONE_CONFIG_FILENAME", raising=False)
