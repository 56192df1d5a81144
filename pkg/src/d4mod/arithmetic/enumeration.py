"""Exact enumeration of lattice vectors below a norm bound.

The search is Fincke-Pohst: the Gram matrix is decomposed exactly over the
rationals into Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2, and coordinates
are fixed from the last to the first. The tree is expanded breadth-first with
numpy, one coordinate level at a time, in chunks so memory stays bounded.

Floats only prune. Every candidate leaf is accepted or rejected by evaluating
x^T G x in exact integer arithmetic, and pruning intervals are widened by a
margin so no true solution can be cut off by rounding.

Reference: U. Fincke, M. Pohst, "Improved methods for calculating vectors of
short length in a lattice", Math. Comp. 44 (1985)
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..exceptions import InvalidInputError
from .common import check_int64_headroom

logger = logging.getLogger(__name__)

# Slack added to every float pruning interval
_PRUNING_MARGIN = 1e-6

# Partial vectors expanded per batch
_CHUNK_ROWS = 1 << 16


def fincke_pohst_decomposition(gram: Sequence[Sequence[int | Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact quadratic-form decomposition of a positive definite Gram matrix.

    Args:
        gram: Symmetric positive definite matrix

    Returns:
        Matrix q with q[i][i] the pivots and q[i][j] (j > i) the multipliers

    Raises:
        InvalidInputError: If the matrix is not symmetric positive definite
    """
    n = len(gram)
    q = [[Fraction(value) for value in row] for row in gram]
    if any(len(row) != n for row in q) or any(q[i][j] != q[j][i] for i in range(n) for j in range(n)):
        raise InvalidInputError("Gram matrix must be square and symmetric")
    for i in range(n):
        if q[i][i] <= 0:
            raise InvalidInputError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[k][i] * q[i][m]
    return tuple(tuple(row) for row in q)


@dataclass(frozen=True, kw_only=True)
class _Search:
    gram: np.ndarray  # exact integer Gram matrix
    pivots: np.ndarray  # float q_ii
    multipliers: np.ndarray  # float q_ij for j > i, zero elsewhere
    bound: int


def _expand_level(search: _Search, coords: np.ndarray, remaining: np.ndarray, level: int) -> tuple[np.ndarray, np.ndarray]:
    center = -(coords[:, level + 1 :].astype(np.float64) @ search.multipliers[level, level + 1 :])
    radius = np.sqrt(np.maximum(remaining, 0.0) / search.pivots[level])
    low = np.ceil(center - radius - _PRUNING_MARGIN).astype(np.int64)
    high = np.floor(center + radius + _PRUNING_MARGIN).astype(np.int64)
    counts = np.maximum(high - low + 1, 0)
    total = int(counts.sum())
    parents = np.repeat(np.arange(len(coords)), counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    values = low[parents] + offsets
    children = coords[parents]
    children[:, level] = values
    deviation = values - center[parents]
    return children, remaining[parents] - search.pivots[level] * deviation * deviation


def _descend(search: _Search, coords: np.ndarray, remaining: np.ndarray, level: int) -> Iterator[np.ndarray]:
    if level < 0:
        values = np.einsum("ni,ij,nj->n", coords, search.gram, coords)
        yield coords[values <= search.bound]
        return
    children, left = _expand_level(search, coords, remaining, level)
    for start in range(0, len(children), _CHUNK_ROWS):
        stop = start + _CHUNK_ROWS
        yield from _descend(search, children[start:stop], left[start:stop], level - 1)


def lattice_points(gram: Sequence[Sequence[int]], bound: int) -> tuple[np.ndarray, np.ndarray]:
    """All integer vectors x with x^T G x <= bound.

    Args:
        gram: Integral symmetric positive definite Gram matrix
        bound: Non-negative upper bound on x^T G x

    Returns:
        (vectors, values): an (m, n) int64 array sorted lexicographically and the
        exact value x^T G x of every row

    Raises:
        InvalidInputError: If the bound is negative or the Gram matrix is not
            integral and positive definite
    """
    if bound < 0:
        raise InvalidInputError(f"norm bound must be non-negative, got {bound}")
    decomposition = fincke_pohst_decomposition(gram)
    n = len(decomposition)
    if any(Fraction(value).denominator != 1 for row in gram for value in row):
        raise InvalidInputError("exact acceptance needs an integral Gram matrix")
    integral = np.array([[int(value) for value in row] for row in gram], dtype=np.int64)
    # |x_i| <= sqrt(bound / lambda_min); bound * max|G| * n^2 must stay in int64
    check_int64_headroom(bound + 1, int(np.abs(integral).max()), n * n)
    search = _Search(
        gram=integral,
        pivots=np.array([float(decomposition[i][i]) for i in range(n)]),
        multipliers=np.array(
            [[float(decomposition[i][j]) if j > i else 0.0 for j in range(n)] for i in range(n)]
        ),
        bound=bound,
    )
    start = np.zeros((1, n), dtype=np.int64)
    blocks = list(_descend(search, start, np.array([float(bound)]), n - 1))
    vectors = np.concatenate(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    order = np.lexsort(vectors.T[::-1])
    vectors = vectors[order]
    values = np.einsum("ni,ij,nj->n", vectors, integral, vectors)
    logger.debug("enumerated %d lattice points with Q <= %d", len(vectors), bound)
    return vectors, values


def short_vectors(gram: Sequence[Sequence[int]], target: int) -> np.ndarray:
    """All integer vectors x with x^T G x == target, sorted lexicographically."""
    vectors, values = lattice_points(gram, target)
    return vectors[values == target]
