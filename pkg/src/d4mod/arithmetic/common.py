"""Common types and helpers shared across the arithmetic layer.

This module contains the small vocabulary every other arithmetic module uses:
coordinate aliases, exact gcd helpers and the int64 headroom guard for the
vectorised counting loops.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np

# =============================================================================
# Type aliases
# =============================================================================

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]
IntMatrix = tuple[tuple[int, ...], ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]

# =============================================================================
# Constants
# =============================================================================

OCTONION_DIMENSION = 8

# Largest magnitude we allow an int64 intermediate to reach (2**62 leaves a
# factor of two for the final accumulation).
INT64_HEADROOM = 1 << 62

# =============================================================================
# Helper functions
# =============================================================================


def gcd_all(values: Iterable[int]) -> int:
    """Return the non-negative gcd of all values (0 for an empty or all-zero input)."""
    result = 0
    for value in values:
        result = math.gcd(result, value)
    return result


def as_fraction_vector(values: Sequence[int | Fraction]) -> RationalVector:
    """Convert a sequence of integers or fractions to a tuple of Fractions."""
    return tuple(Fraction(value) for value in values)


def is_integral(values: Iterable[Fraction]) -> bool:
    """Return True when every fraction has denominator 1."""
    return all(value.denominator == 1 for value in values)


def check_int64_headroom(*bounds: int) -> None:
    """Raise OverflowError if a product of the given magnitude bounds leaves int64 range.

    Args:
        bounds: Upper bounds for the absolute values of the factors that will be
            multiplied together (including any summation length).

    Raises:
        OverflowError: The product of the bounds reaches INT64_HEADROOM.
    """
    product = 1
    for bound in bounds:
        product *= max(int(bound), 1)
    if product >= INT64_HEADROOM:
        raise OverflowError(f"int64 intermediate bound {product} exceeds headroom {INT64_HEADROOM}")


def max_abs(array: np.ndarray) -> int:
    """Largest absolute entry of an integer array (0 for an empty array)."""
    if array.size == 0:
        return 0
    return int(np.abs(array).max())
