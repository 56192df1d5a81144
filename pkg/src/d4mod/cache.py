"""On-disk cache of lattice shells.

File format (text, one file per norm, ``shell-<norm>.txt``)::

    D4MOD-SHELL v1 basis=<tag> norm=<n> count=<k>
    <8 space-separated integers>      (k lines)

Readers validate the header, the basis tag, the body length and, when the
caller supplies a norm function, the norm of every row; any mismatch is logged as a warning and reported as a miss so the caller recomputes.
Writers go through a temporary file in the same directory followed by
`os.replace`, so concurrent readers never observe a partial file. The temporary
file is removed if the write fails.
"""

from __future__ import annotations

import contextlib
import logging
import os
import re
import tempfile
from collections.abc import Callable
from pathlib import Path

import numpy as np

from .exceptions import CacheError

logger = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = "v1"
CACHE_MAGIC = "D4MOD-SHELL"

_HEADER_PATTERN = re.compile(
    rf"^{CACHE_MAGIC} (?P<version>\S+) basis=(?P<tag>\S+) norm=(?P<norm>\d+) count=(?P<count>\d+)$"
)


def shell_path(directory: Path, norm: int) -> Path:
    return Path(directory) / f"shell-{norm}.txt"


def format_header(tag: str, norm: int, count: int) -> str:
    return f"{CACHE_MAGIC} {CACHE_FORMAT_VERSION} basis={tag} norm={norm} count={count}"


NormFunction = Callable[[np.ndarray], np.ndarray]


def _parse(path: Path, norm: int, tag: str, width: int, norm_of: NormFunction | None) -> np.ndarray:
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as e:
        raise CacheError(f"cannot read {path}: {e}") from e
    header, _, body = text.partition("\n")
    match = _HEADER_PATTERN.match(header)
    if match is None:
        raise CacheError(f"corrupt header in {path}")
    if match["version"] != CACHE_FORMAT_VERSION:
        raise CacheError(f"{path} has format {match['version']}, expected {CACHE_FORMAT_VERSION}")
    if match["tag"] != tag:
        raise CacheError(f"{path} was written for basis {match['tag']}, expected {tag}")
    if int(match["norm"]) != norm:
        raise CacheError(f"{path} holds norm {match['norm']}, expected {norm}")
    count = int(match["count"])
    lines = body.splitlines()
    if len(lines) != count:
        raise CacheError(f"{path} declares {count} vectors but has {len(lines)} lines")
    tokens = body.split()
    if len(tokens) != count * width:
        raise CacheError(f"{path} body has {len(tokens)} integers, expected {count * width}")
    try:
        vectors = np.array([int(token) for token in tokens], dtype=np.int64)
    except (ValueError, OverflowError) as e:
        raise CacheError(f"{path} body is not integral: {e}") from e
    vectors = vectors.reshape(count, width)
    if norm_of is not None and count:
        try:
            norms = norm_of(vectors)
        except OverflowError as e:
            raise CacheError(f"{path} body has out-of-range entries: {e}") from e
        bad = int(np.count_nonzero(norms != norm))
        if bad:
            raise CacheError(f"{path} has {bad} vectors whose norm is not {norm}")
    return vectors


def load_shell_vectors(
    directory: Path, norm: int, tag: str, width: int = 8, norm_of: NormFunction | None = None
) -> np.ndarray | None:
    """Load cached shell vectors, or None on a miss.

    Args:
        directory: Cache directory
        norm: Shell norm
        tag: Basis tag the file must carry
        width: Number of coordinates per vector
        norm_of: Optional row-wise norm; every row must have the declared norm

    Returns:
        (count, width) int64 array, or None if the file is absent or rejected
    """
    path = shell_path(directory, norm)
    if not path.exists():
        return None
    try:
        vectors = _parse(path, norm, tag, width, norm_of)
    except CacheError as e:
        logger.warning("ignoring shell cache entry: %s", e)
        return None
    logger.debug("loaded %d vectors of norm %d from %s", len(vectors), norm, path)
    return vectors


def store_shell_vectors(directory: Path, norm: int, tag: str, vectors: np.ndarray) -> Path:
    """Atomically write shell vectors to the cache.

    Raises:
        CacheError: If the directory cannot be created or written
    """
    directory = Path(directory)
    path = shell_path(directory, norm)
    temporary: Path | None = None
    try:
        directory.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            "w", encoding="ascii", dir=directory, prefix=f".shell-{norm}-", suffix=".tmp", delete=False
        ) as handle:
            temporary = Path(handle.name)
            handle.write(format_header(tag, norm, len(vectors)) + "\n")
            if len(vectors):
                np.savetxt(handle, vectors, fmt="%d", delimiter=" ")
        os.replace(temporary, path)
    except OSError as e:
        if temporary is not None:
            with contextlib.suppress(OSError):
                temporary.unlink(missing_ok=True)
        raise CacheError(f"cannot write {path}: {e}") from e
    logger.debug("stored %d vectors of norm %d in %s", len(vectors), norm, path)
    return path
