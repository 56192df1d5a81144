"""Quaternion orders used to build the octonion orders.

Two quaternion orders feed the Cayley-Dickson doubling:

- the Hurwitz order of the rational Hamilton quaternions, spanned by
  1, (1+i+j+k)/2, (1+i+j-k)/2, (1-i+j+k)/2 (a D4 lattice with 24 units);
- the split order M2(Z) of integer 2x2 matrices, whose main involution
  (adjugate) plays the role of conjugation.

Reference: J. Voight, "Quaternion Algebras" (2021), ch. 11
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import sympy

from .common import RationalVector, is_integral
from .enumeration import short_vectors

# =============================================================================
# 2x2 integer matrices (the split quaternion order)
# =============================================================================

Mat2 = tuple[tuple[int, int], tuple[int, int]]

MAT2_IDENTITY: Mat2 = ((1, 0), (0, 1))
MAT2_ZERO: Mat2 = ((0, 0), (0, 0))


def mat2(a: int, b: int, c: int, d: int) -> Mat2:
    return ((a, b), (c, d))


def mat2_mul(x: Mat2, y: Mat2) -> Mat2:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat2_add(x: Mat2, y: Mat2) -> Mat2:
    return ((x[0][0] + y[0][0], x[0][1] + y[0][1]), (x[1][0] + y[1][0], x[1][1] + y[1][1]))


def mat2_sub(x: Mat2, y: Mat2) -> Mat2:
    return ((x[0][0] - y[0][0], x[0][1] - y[0][1]), (x[1][0] - y[1][0], x[1][1] - y[1][1]))


def mat2_neg(x: Mat2) -> Mat2:
    return ((-x[0][0], -x[0][1]), (-x[1][0], -x[1][1]))


def mat2_bar(x: Mat2) -> Mat2:
    """Main involution: swap the diagonal and negate the off-diagonal."""
    (a, b), (c, d) = x
    return ((d, -b), (-c, a))


def mat2_det(x: Mat2) -> int:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def mat2_trace(x: Mat2) -> int:
    return x[0][0] + x[1][1]


# =============================================================================
# Hamilton quaternions and the Hurwitz order
# =============================================================================

# Coordinates (1, i, j, k); rows are 2 * basis vector.
HURWITZ_BASIS_DOUBLED: tuple[tuple[int, int, int, int], ...] = (
    (2, 0, 0, 0),
    (1, 1, 1, 1),
    (1, 1, 1, -1),
    (1, -1, 1, 1),
)

HURWITZ_UNIT_COUNT = 24
HURWITZ_GRAM_DETERMINANT = 4


def quaternion_mul(x: Sequence[Fraction | int], y: Sequence[Fraction | int]) -> RationalVector:
    """Hamilton product of two rational quaternions in (1, i, j, k) coordinates."""
    a1, b1, c1, d1 = (Fraction(v) for v in x)
    a2, b2, c2, d2 = (Fraction(v) for v in y)
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def hurwitz_basis() -> tuple[RationalVector, ...]:
    """The Hurwitz order basis as rational quaternions."""
    return tuple(tuple(Fraction(v, 2) for v in row) for row in HURWITZ_BASIS_DOUBLED)


def _hurwitz_coords(x: RationalVector) -> RationalVector:
    inverse = sympy.Matrix(HURWITZ_BASIS_DOUBLED).inv() * 2
    return tuple(
        sum((x[i] * Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for i in range(4)), Fraction(0))
        for j in range(4)
    )


def hurwitz_gram() -> tuple[tuple[int, ...], ...]:
    """Gram matrix of <x, y> = 2 Re(conj(x) y) on the Hurwitz basis."""
    basis = hurwitz_basis()
    return tuple(tuple(int(2 * sum(a * b for a, b in zip(x, y, strict=True))) for y in basis) for x in basis)


def verify_hurwitz_order() -> int:
    """Check that the Hurwitz basis spans an order with 24 units and return the unit count.

    The Gram matrix of the trace form must have determinant 4 (the D4 lattice).

    Raises:
        AssertionError: If closure fails, the Gram determinant is not 4 or the unit count is wrong
    """
    basis = hurwitz_basis()
    for x in basis:
        for y in basis:
            coords = _hurwitz_coords(quaternion_mul(x, y))
            assert is_integral(coords), f"Hurwitz basis not closed: {x} * {y}"
    gram = hurwitz_gram()
    determinant = int(sympy.Matrix(gram).det())
    assert determinant == HURWITZ_GRAM_DETERMINANT, (
        f"Hurwitz Gram determinant is {determinant}, expected {HURWITZ_GRAM_DETERMINANT}"
    )
    units = len(short_vectors(gram, 2))
    assert units == HURWITZ_UNIT_COUNT, f"expected {HURWITZ_UNIT_COUNT} Hurwitz units, found {units}"
    return units
