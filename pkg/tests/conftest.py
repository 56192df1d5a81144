"""Shared test fixtures for d4mod tests."""

from __future__ import annotations

import logging
import random
from collections.abc import Generator
from pathlib import Path
from typing import Any

import pytest

from src.d4mod.arithmetic.lattice import ShellStore

SHARED_MAX_SHELL_NORM = 16
RANDOM_SEED = 20240601


@pytest.fixture(scope="session")
def shell_store() -> ShellStore:
    """In-memory shell store shared by every test in the session."""
    return ShellStore(max_norm=SHARED_MAX_SHELL_NORM)


@pytest.fixture
def rng() -> random.Random:
    """Seeded random generator for randomised identity checks."""
    return random.Random(RANDOM_SEED)


@pytest.fixture
def cache_dir(tmp_path: Path) -> Path:
    """Empty shell cache directory."""
    directory = tmp_path / "shells"
    directory.mkdir()
    return directory


@pytest.fixture
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Remove every D4MOD_* variable from the environment."""
    for variable in ("D4MOD_CACHE_DIR", "D4MOD_MAX_SHELL_NORM", "D4MOD_WORKERS"):
        monkeypatch.delenv(variable, raising=False)


@pytest.fixture(autouse=True)
def reset_cli_logging() -> Generator[None]:
    """Drop handlers the CLI attaches, so each test sees a fresh stderr."""
    yield
    package_logger = logging.getLogger("src.d4mod")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)


def pytest_configure(config: Any) -> None:
    """Configure pytest markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test (fast, pure arithmetic)")
    config.addinivalue_line("markers", "integration: mark test as an integration test (filesystem, pools, CLI)")
    config.addinivalue_line("markers", "slow: mark test as slow (large shells or pair loops)")
