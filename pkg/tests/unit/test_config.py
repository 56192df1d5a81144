"""Unit tests for configuration loading and the worker pool helpers."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from src.d4mod.config import Config, load_config, read_config_file
from src.d4mod.exceptions import InvalidInputError
from src.d4mod.parallel import WorkerPool, partition_rows

# =============================================================================
# Test Constants - Duplicated from src for test isolation
# =============================================================================

TEST_DEFAULT_MAX_SHELL_NORM = 16

# =============================================================================
# Configuration Tests
# =============================================================================


@pytest.mark.unit
class TestConfig:
    """Tests for Config validation."""

    def test_defaults(self) -> None:
        """Test the default values."""
        config = Config()
        assert config.cache_dir is None
        assert config.max_shell_norm == TEST_DEFAULT_MAX_SHELL_NORM
        assert config.worker_count >= 1
        assert config.output == "json"

    def test_frozen(self) -> None:
        """Test that a Config cannot be modified."""
        config = Config()
        with pytest.raises(ValidationError):
            config.max_shell_norm = 4  # type: ignore[misc]

    def test_shell_store(self, tmp_path: Path) -> None:
        """Test that the store inherits the bound and creates the cache directory."""
        directory = tmp_path / "nested" / "cache"
        store = Config(cache_dir=directory, max_shell_norm=3).shell_store()
        assert store.max_norm == 3
        assert store.cache_dir == directory
        assert directory.is_dir()

    def test_cache_dir_is_a_file(self, tmp_path: Path) -> None:
        """Test that an unusable cache directory raises InvalidInputError."""
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")
        with pytest.raises(InvalidInputError, match="cannot be created"):
            Config(cache_dir=blocker / "cache").prepare_cache_dir()


@pytest.mark.unit
class TestLoadConfig:
    """Tests for load_config precedence and validation."""

    def test_environment(self) -> None:
        """Test that environment variables are read."""
        config = load_config(environ={"D4MOD_MAX_SHELL_NORM": "8", "D4MOD_WORKERS": "3"})
        assert config.max_shell_norm == 8
        assert config.worker_count == 3

    def test_precedence(self, tmp_path: Path) -> None:
        """Test file < environment < overrides."""
        path = tmp_path / "d4mod.conf"
        path.write_text("# shells\nmax_shell_norm = 4\nworker_count=2\noutput=table\n", encoding="utf-8")
        config = load_config(
            config_file=path,
            environ={"D4MOD_MAX_SHELL_NORM": "6"},
            overrides={"max_shell_norm": 10, "worker_count": None},
        )
        assert config.max_shell_norm == 10
        assert config.worker_count == 2
        assert config.output == "table"

    @pytest.mark.parametrize(
        "environ",
        [{"D4MOD_MAX_SHELL_NORM": "0"}, {"D4MOD_WORKERS": "-1"}, {"D4MOD_MAX_SHELL_NORM": "many"}],
        ids=["zero_norm", "negative_workers", "not_a_number"],
    )
    def test_invalid_values(self, environ: dict[str, str]) -> None:
        """Test that invalid values raise InvalidInputError."""
        with pytest.raises(InvalidInputError, match="invalid configuration"):
            load_config(environ=environ)

    def test_unknown_key(self, tmp_path: Path) -> None:
        """Test that an unknown key in the file raises InvalidInputError."""
        path = tmp_path / "d4mod.conf"
        path.write_text("shell_size=3\n", encoding="utf-8")
        with pytest.raises(InvalidInputError, match="invalid configuration"):
            load_config(config_file=path, environ={})

    def test_malformed_line(self, tmp_path: Path) -> None:
        """Test that a line without '=' raises InvalidInputError."""
        path = tmp_path / "d4mod.conf"
        path.write_text("max_shell_norm 4\n", encoding="utf-8")
        with pytest.raises(InvalidInputError, match="expected key=value"):
            read_config_file(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable file raises InvalidInputError."""
        with pytest.raises(InvalidInputError, match="cannot read"):
            read_config_file(tmp_path / "missing.conf")


# =============================================================================
# Worker Pool Tests
# =============================================================================


@pytest.mark.unit
class TestPartitionRows:
    """Tests for partition_rows."""

    def test_chunk_sizes(self) -> None:
        """Test that chunks respect the pair block and cover every row."""
        rows = np.arange(50).reshape(25, 2)
        chunks = partition_rows(rows, partner_count=10, pair_block=40)
        assert [len(chunk) for chunk in chunks] == [4, 4, 4, 4, 4, 4, 1]
        assert np.array_equal(np.concatenate(chunks), rows)

    def test_at_least_one_row(self) -> None:
        """Test that a huge partner count still gives one row per chunk."""
        rows = np.zeros((3, 8), dtype=np.int64)
        assert len(partition_rows(rows, partner_count=10**9, pair_block=16)) == 3

    def test_empty(self) -> None:
        """Test that no rows give no chunks."""
        assert partition_rows(np.zeros((0, 8), dtype=np.int64), 5) == []


@pytest.mark.unit
class TestWorkerPool:
    """Tests for WorkerPool in inline mode."""

    def test_inline_sum(self) -> None:
        """Test that one worker sums in process."""
        assert WorkerPool(1).sum(abs, [-1, -2, 3]) == 6

    def test_single_chunk_runs_inline(self) -> None:
        """Test that a single chunk never starts processes."""
        assert WorkerPool(4).sum(len, [[1, 2, 3]]) == 3

    def test_empty(self) -> None:
        """Test that no chunks sum to 0."""
        assert WorkerPool(1).sum(abs, []) == 0

    def test_rejects_zero_workers(self) -> None:
        """Test that a worker count below 1 raises ValueError."""
        with pytest.raises(ValueError, match="positive"):
            WorkerPool(0)
