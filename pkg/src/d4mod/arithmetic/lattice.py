"""Shells of the E8 lattice (Coxeter's order under <x, y> = Tr(conj(x) y)).

Classes:
    - Shell: all elements of a fixed norm, as an (count, 8) int64 array in
      lexicographic order, with a lazily built tuple of Octonions
    - ShellStore: bounded, memoised shell provider backed by the on-disk cache

Functions:
    - enumerate_shell: exact enumeration of one shell
    - shell_cache_load / shell_cache_store: Shell-level wrappers of `d4mod.cache`
    - quaternion_suborder_units: units inside the quaternion subalgebra of a Fano line
    - d6_roots: units orthogonal to 1 and e0
    - theta_series: shell counts 0..n
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .. import cache
from ..exceptions import CacheError, InvalidInputError, ResourceLimitError
from .common import OCTONION_DIMENSION
from .enumeration import lattice_points, short_vectors
from .fano import COXETER_BASIS, FANO_LINES
from .octonion import GRAM, Octonion, batch_norm, in_d6_sublattice

logger = logging.getLogger(__name__)

DEFAULT_MAX_SHELL_NORM = 16


# =============================================================================
# Shell
# =============================================================================


@dataclass(frozen=True, kw_only=True, eq=False)
class Shell:
    """All elements of norm `norm`, rows of `vectors` in lexicographic order."""

    norm: int
    vectors: np.ndarray
    basis_tag: str = field(default=COXETER_BASIS.tag)

    def __post_init__(self) -> None:
        self.vectors.setflags(write=False)

    @property
    def count(self) -> int:
        return len(self.vectors)

    @cached_property
    def elements(self) -> tuple[Octonion, ...]:
        return tuple(Octonion.from_coords(row) for row in self.vectors.tolist())

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[Octonion]:
        return iter(self.elements)

    def same_as(self, other: Shell) -> bool:
        """Bit-exact comparison of norm, tag and element list."""
        return (
            self.norm == other.norm
            and self.basis_tag == other.basis_tag
            and self.vectors.shape == other.vectors.shape
            and bool(np.array_equal(self.vectors, other.vectors))
        )


def _check_norm(norm: int, max_norm: int) -> None:
    if norm < 0:
        raise InvalidInputError(f"shell norm must be non-negative, got {norm}")
    if norm > max_norm:
        raise ResourceLimitError(f"shell norm {norm} exceeds the configured bound {max_norm}")


def enumerate_shell(norm: int, *, max_norm: int = DEFAULT_MAX_SHELL_NORM) -> Shell:
    """Enumerate every element of norm `norm`.

    Args:
        norm: Required norm n >= 0
        max_norm: Refuse norms above this bound

    Returns:
        Complete, duplicate-free Shell in lexicographic order

    Raises:
        InvalidInputError: If norm is negative
        ResourceLimitError: If norm exceeds max_norm
    """
    _check_norm(norm, max_norm)
    if norm == 0:
        return Shell(norm=0, vectors=np.zeros((1, OCTONION_DIMENSION), dtype=np.int64))
    vectors = short_vectors(GRAM, 2 * norm)
    logger.debug("shell %d: %d elements", norm, len(vectors))
    return Shell(norm=norm, vectors=vectors)


def shell_cache_load(directory: Path, norm: int) -> Shell | None:
    """Load a shell from the cache directory; None on a miss or a rejected file."""
    vectors = cache.load_shell_vectors(directory, norm, COXETER_BASIS.tag, norm_of=batch_norm)
    if vectors is None:
        return None
    return Shell(norm=norm, vectors=vectors)


def shell_cache_store(directory: Path, shell: Shell) -> Path:
    """Store a shell in the cache directory (atomic replace)."""
    return cache.store_shell_vectors(directory, shell.norm, shell.basis_tag, shell.vectors)


# =============================================================================
# Shell store
# =============================================================================


class ShellStore:
    """Memoised shells up to a norm bound, optionally persisted to disk."""

    # Public attributes
    max_norm: int
    cache_dir: Path | None

    # Private attributes
    _shells: dict[int, Shell]

    def __init__(self, *, max_norm: int = DEFAULT_MAX_SHELL_NORM, cache_dir: Path | None = None) -> None:
        """Initialize an empty store.

        Args:
            max_norm: Largest norm the store will enumerate
            cache_dir: Directory for the shell cache, or None for memory only
        """
        self.max_norm = max_norm
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self._shells = {}

    def get(self, norm: int) -> Shell:
        """Return the shell of the given norm, from memory, disk or enumeration."""
        _check_norm(norm, self.max_norm)
        shell = self._shells.get(norm)
        if shell is not None:
            return shell
        if self.cache_dir is not None:
            shell = shell_cache_load(self.cache_dir, norm)
        if shell is None:
            shell = enumerate_shell(norm, max_norm=self.max_norm)
            self._persist(shell)
        self._shells[norm] = shell
        return shell

    def vectors(self, norm: int) -> np.ndarray:
        return self.get(norm).vectors

    def prefetch(self, up_to: int) -> None:
        """Fill every shell of norm <= up_to with a single enumeration pass."""
        _check_norm(up_to, self.max_norm)
        missing = [n for n in range(up_to + 1) if n not in self._shells]
        if self.cache_dir is not None:
            for n in list(missing):
                shell = shell_cache_load(self.cache_dir, n)
                if shell is not None:
                    self._shells[n] = shell
                    missing.remove(n)
        if not missing:
            return
        logger.info("enumerating E8 shells up to norm %d", up_to)
        vectors, values = lattice_points(GRAM, 2 * max(missing))
        for n in missing:
            shell = Shell(norm=n, vectors=np.ascontiguousarray(vectors[values == 2 * n]))
            self._shells[n] = shell
            self._persist(shell)

    def _persist(self, shell: Shell) -> None:
        if self.cache_dir is None:
            return
        try:
            shell_cache_store(self.cache_dir, shell)
        except CacheError as e:
            # The shell stays in memory; only the disk copy is lost
            logger.warning("shell %d not cached: %s", shell.norm, e)

    def __contains__(self, norm: int) -> bool:
        return norm in self._shells


# =============================================================================
# Sublattices
# =============================================================================


def quaternion_suborder_units(line: tuple[int, int, int], store: ShellStore | None = None) -> tuple[Octonion, ...]:
    """Units of the order lying in span{1, e_a, e_b, e_c} for a Fano line (a, b, c).

    Raises:
        InvalidInputError: If the triple is not a line of the Fano table
    """
    if tuple(sorted(line)) not in {tuple(sorted(known)) for known in FANO_LINES}:
        raise InvalidInputError(f"{line} is not a Fano line")
    support = {0, *(point + 1 for point in line)}
    units = (store or ShellStore()).get(1)
    return tuple(
        x for x in units.elements if all(value == 0 for k, value in enumerate(x.to_fano()) if k not in support)
    )


def d6_roots(store: ShellStore | None = None) -> tuple[Octonion, ...]:
    """Units orthogonal to 1 and e0 (the roots of the D6 sublattice)."""
    units = (store or ShellStore()).get(1)
    return tuple(x for x in units.elements if in_d6_sublattice(x))


def theta_series(n_max: int, store: ShellStore | None = None) -> list[int]:
    """Number of lattice elements of norm n for n = 0..n_max."""
    store = store or ShellStore()
    store.prefetch(n_max)
    return [store.get(n).count for n in range(n_max + 1)]
