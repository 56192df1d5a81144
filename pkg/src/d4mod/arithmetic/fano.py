"""Fano plane multiplication and the basis of Coxeter's integral octonions.

This module is the single source of truth for the octonion multiplication
table. Everything else in the package works in integer coordinates with
respect to an order basis; this module is where those coordinates are tied
back to the classical basis {1, e0, ..., e6}.

Classes:
    - OrderBasis: eight rational octonions spanning a candidate order, with the
      structure constants, Gram matrix and trace vector they induce

Fano coordinates:
    A rational octonion is an 8-tuple (x_1, x_e0, ..., x_e6); index 0 is the real
    part and index 1 + n is the coefficient of e_n.

Orientation:
    The seven lines are {n, n+1, n+3} (indices mod 7), read cyclically:
    e_n e_{n+1} = e_{n+3}, e_{n+1} e_{n+3} = e_n, e_{n+3} e_n = e_{n+1}.
    Reversing the order of a product on a line flips the sign; e_n^2 = -1.

Reference: H. S. M. Coxeter, "Integral Cayley numbers", Duke Math. J. 13 (1946)
"""

from __future__ import annotations

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import sympy

from ..exceptions import InvalidInputError
from .common import OCTONION_DIMENSION, IntMatrix, RationalMatrix, RationalVector, as_fraction_vector

# =============================================================================
# Fano Plane Constants
# =============================================================================

# Oriented lines (a, b, c) meaning e_a e_b = e_c; indices are imaginary units 0..6.
FANO_LINES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 3),
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 6),
    (4, 5, 0),
    (5, 6, 1),
    (6, 0, 2),
)

# Rows are 2*beta_i in Fano coordinates (1, e0, e1, e2, e3, e4, e5, e6).
# The half-integral rows sit on codewords of the doubly even code obtained from
# {oo} + line by exchanging oo with the point 0; the lattice they span with
# 1, e4, e5, e6 is closed under the multiplication above.
ORDER_BASIS_DOUBLED: IntMatrix = (
    (2, 0, 0, 0, 0, 0, 0, 0),  # 1
    (1, 0, 0, 0, 1, 0, 1, 1),  # (1 + e3 + e5 + e6) / 2
    (0, 1, 0, 0, 1, 1, 0, 1),  # (e0 + e3 + e4 + e6) / 2
    (0, 0, 1, 0, 1, 1, 1, 0),  # (e1 + e3 + e4 + e5) / 2
    (0, 0, 0, 1, 0, 1, 1, 1),  # (e2 + e4 + e5 + e6) / 2
    (0, 0, 0, 0, 0, 2, 0, 0),  # e4
    (0, 0, 0, 0, 0, 0, 2, 0),  # e5
    (0, 0, 0, 0, 0, 0, 0, 2),  # e6
)

# =============================================================================
# Helper functions
# =============================================================================


def _build_unit_products() -> dict[tuple[int, int], tuple[int, int]]:
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for p, q, r in FANO_LINES:
        for a, b, c in ((p, q, r), (q, r, p), (r, p, q)):
            table[(a, b)] = (1, c)
            table[(b, a)] = (-1, c)
    assert len(table) == 42, "Fano lines must cover every ordered pair of distinct units"
    return table


_UNIT_PRODUCTS = _build_unit_products()


@lru_cache(maxsize=64)
def unit_product(i: int, j: int) -> tuple[int, int]:
    """Multiply two Fano basis vectors.

    Args:
        i: Fano coordinate index of the left factor (0 is the real unit)
        j: Fano coordinate index of the right factor

    Returns:
        (sign, k) with basis_i * basis_j = sign * basis_k

    Raises:
        ValueError: If an index is outside 0..7
    """
    if not (0 <= i < OCTONION_DIMENSION and 0 <= j < OCTONION_DIMENSION):
        raise ValueError(f"Fano coordinate indices must be in 0..7, got ({i}, {j})")
    if i == 0:
        return 1, j
    if j == 0:
        return 1, i
    if i == j:
        return -1, 0
    sign, k = _UNIT_PRODUCTS[(i - 1, j - 1)]
    return sign, k + 1


def fano_mul(x: Sequence[Fraction | int], y: Sequence[Fraction | int]) -> RationalVector:
    """Multiply two rational octonions given in Fano coordinates."""
    result = [Fraction(0)] * OCTONION_DIMENSION
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            sign, k = unit_product(i, j)
            result[k] += sign * xi * yj
    return tuple(result)


def fano_conj(x: Sequence[Fraction | int]) -> RationalVector:
    """Conjugate a rational octonion in Fano coordinates."""
    return (Fraction(x[0]), *(-Fraction(value) for value in x[1:]))


def fano_norm(x: Sequence[Fraction | int]) -> Fraction:
    """Norm (sum of squares) of a rational octonion in Fano coordinates."""
    return sum((Fraction(value) ** 2 for value in x), Fraction(0))


def fano_unit(n: int) -> RationalVector:
    """The imaginary unit e_n (n in 0..6) in Fano coordinates."""
    if not 0 <= n < 7:
        raise ValueError(f"imaginary unit index must be in 0..6, got {n}")
    vector = [Fraction(0)] * OCTONION_DIMENSION
    vector[n + 1] = Fraction(1)
    return tuple(vector)


# =============================================================================
# Order basis
# =============================================================================


@dataclass(frozen=True, kw_only=True)
class OrderBasis:
    """Eight rational octonions, stored doubled so the rows are integral.

    The basis is only a candidate: nothing here asserts that its span is an
    order. `d4mod.arithmetic.order.verify_order` decides that.
    """

    name: str
    doubled: IntMatrix  # Row i is 2 * beta_i in Fano coordinates

    def __post_init__(self) -> None:
        if len(self.doubled) != OCTONION_DIMENSION or any(len(row) != OCTONION_DIMENSION for row in self.doubled):
            raise InvalidInputError("order basis must be an 8x8 matrix")
        if sympy.Matrix(self.doubled).det() == 0:
            raise InvalidInputError(f"order basis '{self.name}' is singular")

    @cached_property
    def vectors(self) -> RationalMatrix:
        """The basis vectors beta_i in Fano coordinates."""
        return tuple(tuple(Fraction(value, 2) for value in row) for row in self.doubled)

    @cached_property
    def _fano_to_coords(self) -> RationalMatrix:
        # coords = x @ B^-1 with B = doubled / 2
        inverse = sympy.Matrix(self.doubled).inv() * 2
        return tuple(
            tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(OCTONION_DIMENSION))
            for i in range(OCTONION_DIMENSION)
        )

    def to_fano(self, coords: Sequence[int | Fraction]) -> RationalVector:
        """Convert order coordinates to Fano coordinates."""
        result = [Fraction(0)] * OCTONION_DIMENSION
        for c, row in zip(coords, self.vectors, strict=True):
            if c:
                for k, value in enumerate(row):
                    result[k] += c * value
        return tuple(result)

    def from_fano(self, vector: Sequence[int | Fraction]) -> RationalVector:
        """Convert Fano coordinates to (possibly non-integral) order coordinates."""
        x = as_fraction_vector(vector)
        return tuple(
            sum((x[i] * self._fano_to_coords[i][j] for i in range(OCTONION_DIMENSION)), Fraction(0))
            for j in range(OCTONION_DIMENSION)
        )

    @cached_property
    def structure_constants(self) -> tuple[tuple[RationalVector, ...], ...]:
        """T[i][j] = order coordinates of beta_i * beta_j."""
        return tuple(
            tuple(self.from_fano(fano_mul(bi, bj)) for bj in self.vectors) for bi in self.vectors
        )

    @cached_property
    def gram(self) -> RationalMatrix:
        """Gram matrix of <x, y> = Tr(conj(x) y) = 2 * (Euclidean dot in Fano coordinates)."""
        return tuple(
            tuple(2 * sum((a * b for a, b in zip(bi, bj, strict=True)), Fraction(0)) for bj in self.vectors)
            for bi in self.vectors
        )

    @cached_property
    def trace_vector(self) -> RationalVector:
        """Tr(beta_i) = 2 * real part of beta_i."""
        return tuple(2 * row[0] for row in self.vectors)

    @cached_property
    def tag(self) -> str:
        """Stable identifier of this basis, used to validate cached shells."""
        digest = hashlib.sha256(repr(self.doubled).encode("ascii")).hexdigest()
        return f"{self.name}-{digest[:12]}"

    def scaled(self, factor: int) -> OrderBasis:
        """Return the basis with every vector multiplied by factor."""
        return OrderBasis(
            name=f"{self.name}-x{factor}",
            doubled=tuple(tuple(factor * value for value in row) for row in self.doubled),
        )


COXETER_BASIS = OrderBasis(name="coxeter", doubled=ORDER_BASIS_DOUBLED)
