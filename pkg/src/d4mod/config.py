"""Runtime configuration.

Values are merged from, lowest precedence first: model defaults, an optional
``key=value`` config file (``#`` starts a comment), the environment
(``D4MOD_CACHE_DIR``, ``D4MOD_MAX_SHELL_NORM``, ``D4MOD_WORKERS``) and
explicit overrides (the CLI flags).
"""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError

from .arithmetic.lattice import DEFAULT_MAX_SHELL_NORM, ShellStore
from .exceptions import InvalidInputError
from .parallel import default_worker_count

logger = logging.getLogger(__name__)

ENVIRONMENT_KEYS: dict[str, str] = {
    "D4MOD_CACHE_DIR": "cache_dir",
    "D4MOD_MAX_SHELL_NORM": "max_shell_norm",
    "D4MOD_WORKERS": "worker_count",
}


class Config(BaseModel):
    """Validated, immutable settings shared by every command."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cache_dir: Path | None = None
    max_shell_norm: PositiveInt = DEFAULT_MAX_SHELL_NORM
    worker_count: PositiveInt = Field(default_factory=default_worker_count)
    output: Literal["json", "table"] = "json"

    def prepare_cache_dir(self) -> Path | None:
        """Create the cache directory if needed.

        Raises:
            InvalidInputError: If the directory cannot be created
        """
        if self.cache_dir is None:
            return None
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise InvalidInputError(f"cache directory {self.cache_dir} cannot be created: {e}") from e
        return self.cache_dir

    def shell_store(self) -> ShellStore:
        return ShellStore(max_norm=self.max_shell_norm, cache_dir=self.prepare_cache_dir())


def read_config_file(path: Path) -> dict[str, str]:
    """Parse ``key=value`` lines.

    Raises:
        InvalidInputError: If the file cannot be read or a line has no '='
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"cannot read config file {path}: {e}") from e
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidInputError(f"{path}:{number}: expected key=value, got '{raw.strip()}'")
        values[key.strip()] = value.strip()
    return values


def load_config(
    *,
    config_file: Path | None = None,
    environ: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> Config:
    """Merge every configuration source into a Config.

    Args:
        config_file: Optional key=value file
        environ: Environment mapping (default: os.environ)
        overrides: Highest-precedence values; None entries are ignored

    Raises:
        InvalidInputError: If any merged value fails validation
    """
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(read_config_file(config_file))
    environment = os.environ if environ is None else environ
    for variable, key in ENVIRONMENT_KEYS.items():
        if environment.get(variable):
            values[key] = environment[variable]
    if overrides:
        values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        config = Config.model_validate(values)
    except ValidationError as e:
        raise InvalidInputError(f"invalid configuration: {e}") from e
    logger.debug("configuration: %s", config)
    return config
