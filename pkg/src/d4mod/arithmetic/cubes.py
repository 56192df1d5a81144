"""Bhargava 2x2x2 cubes of integers.

Classes:
    - Cube: the eight entries c_ijk in lexicographic order
    - TripleSL2: an element (g1, g2, g3) of SL2(Z)^3
    - OrbitInvariants: discriminant and the three narrow classes of a cube

Face convention:
    F1[r][s] = c_{0 s r},  F1'[r][s] = c_{1 s r}
    F2[r][s] = c_{r 0 s},  F2'[r][s] = c_{r 1 s}
    F3[r][s] = c_{s r 0},  F3'[r][s] = c_{s r 1}
    Q_i(x, y) = -det(F_i x - F_i' y)

    For a normal cube (c000 = 1, c100 = c010 = c001 = 0) write e = c011,
    f = c101, g = c110, m = c111. Then Q1 = -e x^2 + m xy + fg y^2 (and
    cyclically), and the discriminant is m^2 + 4efg.

Action:
    (g1, g2, g3) . c has entries sum g1[i][a] g2[j][b] g3[k][l] c_abl, so
    g1 acts on the first index, g2 on the second and g3 on the third.

Reference: M. Bhargava, "Higher composition laws I", Ann. of Math. 159 (2004)
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Self

from sympy.core.intfunc import igcdex

from ..exceptions import InvalidInputError, ReductionBudgetExceeded
from .common import gcd_all
from .forms import BinaryQuadraticForm, NarrowClass, bqf_reduce, compose
from .quaternion import MAT2_IDENTITY, Mat2, mat2_bar, mat2_det, mat2_mul

logger = logging.getLogger(__name__)

CUBE_SIZE = 8

# Search radius (max-norm) of the primitive vectors tried by `normalize`
DEFAULT_NORMALIZE_RADIUS = 8


# =============================================================================
# Cube
# =============================================================================


def _index(i: int, j: int, k: int) -> int:
    return 4 * i + 2 * j + k


@dataclass(frozen=True, slots=True)
class Cube:
    """Entries (c000, c001, c010, c011, c100, c101, c110, c111)."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != CUBE_SIZE:
            raise InvalidInputError(f"a cube has 8 entries, got {len(self.entries)}")

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse the comma-separated serialization used by the CLI and JSON output."""
        try:
            values = tuple(int(part) for part in text.split(","))
        except ValueError as e:
            raise InvalidInputError(f"cannot parse cube '{text}': {e}") from e
        return cls(values)

    @classmethod
    def normal(cls, e: int, f: int, g: int, m: int) -> Self:
        """The normal cube with c011 = e, c101 = f, c110 = g, c111 = m."""
        return cls((1, 0, 0, e, 0, f, g, m))

    def serialize(self) -> str:
        return ",".join(str(value) for value in self.entries)

    def entry(self, i: int, j: int, k: int) -> int:
        return self.entries[_index(i, j, k)]

    def is_normal(self) -> bool:
        return self.entry(0, 0, 0) == 1 and self.entry(1, 0, 0) == 0 and self.entry(0, 1, 0) == 0 and self.entry(0, 0, 1) == 0

    @property
    def e(self) -> int:
        return self.entry(0, 1, 1)

    @property
    def f(self) -> int:
        return self.entry(1, 0, 1)

    @property
    def g(self) -> int:
        return self.entry(1, 1, 0)

    @property
    def m(self) -> int:
        return self.entry(1, 1, 1)

    def faces(self, direction: int) -> tuple[Mat2, Mat2]:
        """The face pair (F_i, F_i') for direction i in {1, 2, 3}."""
        c = self.entry
        if direction == 1:
            return ((c(0, 0, 0), c(0, 1, 0)), (c(0, 0, 1), c(0, 1, 1))), ((c(1, 0, 0), c(1, 1, 0)), (c(1, 0, 1), c(1, 1, 1)))
        if direction == 2:
            return ((c(0, 0, 0), c(0, 0, 1)), (c(1, 0, 0), c(1, 0, 1))), ((c(0, 1, 0), c(0, 1, 1)), (c(1, 1, 0), c(1, 1, 1)))
        if direction == 3:
            return ((c(0, 0, 0), c(1, 0, 0)), (c(0, 1, 0), c(1, 1, 0))), ((c(0, 0, 1), c(1, 0, 1)), (c(0, 1, 1), c(1, 1, 1)))
        raise ValueError(f"cube direction must be 1, 2 or 3, got {direction}")


# =============================================================================
# SL2(Z)^3
# =============================================================================


def _check_sl2(matrix: Mat2) -> None:
    if mat2_det(matrix) != 1:
        raise InvalidInputError(f"{matrix} does not have determinant 1")


@dataclass(frozen=True, slots=True)
class TripleSL2:
    """(g1, g2, g3) in SL2(Z)^3."""

    g1: Mat2
    g2: Mat2
    g3: Mat2

    def __post_init__(self) -> None:
        for matrix in (self.g1, self.g2, self.g3):
            _check_sl2(matrix)

    @classmethod
    def identity(cls) -> Self:
        return cls(MAT2_IDENTITY, MAT2_IDENTITY, MAT2_IDENTITY)

    def __mul__(self, other: TripleSL2) -> TripleSL2:
        return TripleSL2(mat2_mul(self.g1, other.g1), mat2_mul(self.g2, other.g2), mat2_mul(self.g3, other.g3))

    def inverse(self) -> TripleSL2:
        return TripleSL2(mat2_bar(self.g1), mat2_bar(self.g2), mat2_bar(self.g3))


def act(g: TripleSL2, cube: Cube) -> Cube:
    """Apply (g1, g2, g3) to a cube; act(g h, c) = act(g, act(h, c))."""
    entries = []
    for i, j, k in itertools.product((0, 1), repeat=3):
        total = 0
        for a, b, l in itertools.product((0, 1), repeat=3):
            coefficient = g.g1[i][a] * g.g2[j][b] * g.g3[k][l]
            if coefficient:
                total += coefficient * cube.entry(a, b, l)
        entries.append(total)
    return Cube(tuple(entries))


# =============================================================================
# Forms and invariants
# =============================================================================


def _face_form(face: Mat2, opposite: Mat2) -> BinaryQuadraticForm:
    # -det(F x - F' y) expanded in x^2, xy, y^2
    (p, q), (r, s) = face
    (p1, q1), (r1, s1) = opposite
    return BinaryQuadraticForm(
        -(p * s - q * r),
        p * s1 + p1 * s - q * r1 - q1 * r,
        -(p1 * s1 - q1 * r1),
    )


def cube_forms(cube: Cube) -> tuple[BinaryQuadraticForm, BinaryQuadraticForm, BinaryQuadraticForm]:
    """The three forms Q1, Q2, Q3 attached to a cube (equal discriminants)."""
    q1, q2, q3 = (_face_form(*cube.faces(direction)) for direction in (1, 2, 3))
    assert q1.discriminant == q2.discriminant == q3.discriminant, f"face forms of {cube.entries} disagree"
    return q1, q2, q3


def discriminant(cube: Cube) -> int:
    """The common discriminant of the three attached forms."""
    return cube_forms(cube)[0].discriminant


def is_projective(cube: Cube) -> bool:
    """True when all three attached forms are primitive."""
    projective = all(form.is_primitive() for form in cube_forms(cube))
    if projective:
        assert gcd_all(cube.entries) == 1, f"projective cube {cube.entries} has a common factor"
    return projective


# =============================================================================
# Normal form
# =============================================================================


def _primitive_vectors(radius: int) -> list[tuple[int, int]]:
    # One representative per +/- pair, shortest first
    vectors = [
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if math.gcd(x, y) == 1 and (x > 0 or (x == 0 and y > 0))
    ]
    return sorted(vectors, key=lambda v: (max(abs(v[0]), abs(v[1])), abs(v[0]) + abs(v[1]), -v[0], -v[1]))


def _complete_to_sl2(row: tuple[int, int]) -> Mat2:
    p, q = row
    x, y, g = (int(value) for value in igcdex(p, q))
    assert g == 1, f"{row} is not primitive"
    return ((p, q), (-y, x))


def _slice(cube: Cube, direction: int, vector: tuple[int, int]) -> Mat2:
    # Contract the cube with vector along one direction
    def entry(s: int, i: int, j: int) -> int:
        index = [i, j]
        index.insert(direction - 1, s)
        return cube.entry(*index)

    p, q = vector
    return (
        (p * entry(0, 0, 0) + q * entry(1, 0, 0), p * entry(0, 0, 1) + q * entry(1, 0, 1)),
        (p * entry(0, 1, 0) + q * entry(1, 1, 0), p * entry(0, 1, 1) + q * entry(1, 1, 1)),
    )


def _first_rows(cube: Cube, solution: tuple[int, int], kernel: tuple[int, int]) -> list[tuple[int, int]]:
    # Rows solution + t * kernel with the smallest |det| of their direction 1 slice
    (x00, x01), (x10, x11) = _slice(cube, 1, solution)
    (y00, y01), (y10, y11) = _slice(cube, 1, kernel)
    a = y00 * y11 - y01 * y10
    b = x00 * y11 + x11 * y00 - x01 * y10 - x10 * y01
    c = x00 * x11 - x01 * x10
    steps = {0}
    if a != 0:
        vertex = -b // (2 * a)
        steps.update((vertex, vertex + 1))
    values = {t: abs(a * t * t + b * t + c) for t in steps}
    smallest = min(values.values())
    return [
        (solution[0] + t * kernel[0], solution[1] + t * kernel[1])
        for t in sorted(steps)
        if values[t] == smallest
    ]


def _normal_key(cube: Cube) -> tuple[int, ...]:
    sizes = (abs(cube.e), abs(cube.f), abs(cube.g))
    return (max(sizes), sum(sizes), abs(cube.m), -cube.m, *cube.entries)


def _move_to_normal(cube: Cube, u1: tuple[int, int], u2: tuple[int, int], u3: tuple[int, int]) -> tuple[Cube, TripleSL2]:
    step = TripleSL2(_complete_to_sl2(u1), _complete_to_sl2(u2), _complete_to_sl2(u3))
    moved = act(step, cube)
    assert moved.entry(0, 0, 0) == 1
    shear = TripleSL2(
        ((1, 0), (-moved.entry(1, 0, 0), 1)),
        ((1, 0), (-moved.entry(0, 1, 0), 1)),
        ((1, 0), (-moved.entry(0, 0, 1), 1)),
    )
    witness = shear * step
    result = act(witness, cube)
    assert result.is_normal() and result == act(shear, moved), "normalization witness is inconsistent"
    return result, witness


def normalize(cube: Cube, *, radius: int = DEFAULT_NORMALIZE_RADIUS) -> tuple[Cube, TripleSL2]:
    """Bring a projective non-degenerate cube to its smallest normal form.

    A normal form needs primitive u1, u2, u3 with C(u1, u2, u3) = 1, where C is
    the trilinear form of the cube. Completing them to SL2 matrices moves the
    value 1 into c000, and one simultaneous shear clears the three adjacent
    entries. The resulting e, f, g are the determinants of the cube contracted
    with u1, u2, u3 along the three directions, so they can be read off before
    any matrix is built.

    The search runs over pairs (u2, u3) of primitive vectors within the radius,
    ordered by |f| and |g|. For each pair with gcd(C(e0, u2, u3), C(e1, u2, u3)) = 1
    the solutions u1 form a line, and the points of that line minimising |e|
    are tried. Among all normal forms found the one with the smallest
    max(|e|, |f|, |g|) wins, then the smallest |e| + |f| + |g|, then the
    smallest |m| with m >= 0 preferred, then the entries. Pairs whose |f| or
    |g| already exceeds the best maximum are skipped.

    Args:
        cube: Projective cube with non-zero discriminant
        radius: Max-norm bound of the primitive vectors u2 and u3

    Returns:
        (normal cube, witness g) with act(g, cube) == normal cube; a cube that
        is already the smallest normal form comes back with the identity

    Raises:
        InvalidInputError: If the cube is not projective or is degenerate
        ReductionBudgetExceeded: If no normal form is found within the radius
    """
    if discriminant(cube) == 0:
        raise InvalidInputError(f"cube {cube.serialize()} has discriminant 0")
    if not is_projective(cube):
        raise InvalidInputError(f"cube {cube.serialize()} is not projective")

    candidates = _primitive_vectors(radius)
    seconds = sorted(((abs(mat2_det(_slice(cube, 2, u))), u) for u in candidates), key=lambda item: item[0])
    thirds = sorted(((abs(mat2_det(_slice(cube, 3, u))), u) for u in candidates), key=lambda item: item[0])

    best: tuple[tuple[int, ...], Cube, TripleSL2] | None = None
    for f, u2 in seconds:
        if best is not None and f > best[0][0]:
            break
        for g, u3 in thirds:
            if best is not None and g > best[0][0]:
                break
            values = [
                sum(u2[b] * u3[l] * cube.entry(a, b, l) for b in (0, 1) for l in (0, 1)) for a in (0, 1)
            ]
            x, y, divisor = (int(value) for value in igcdex(values[0], values[1]))
            if divisor != 1:
                continue
            for u1 in _first_rows(cube, (x, y), (-values[1], values[0])):
                result, witness = _move_to_normal(cube, u1, u2, u3)
                key = _normal_key(result)
                if best is None or key < best[0]:
                    best = (key, result, witness)

    if best is None:
        raise ReductionBudgetExceeded(f"no normal form for {cube.serialize()} within radius {radius}")
    _, result, witness = best
    if result == cube:
        return cube, TripleSL2.identity()
    logger.debug("normalized %s -> %s", cube.serialize(), result.serialize())
    return result, witness


# =============================================================================
# Class invariants
# =============================================================================


@dataclass(frozen=True, kw_only=True)
class OrbitInvariants:
    """Discriminant and narrow classes of the three forms of a cube."""

    disc: int
    classes: tuple[NarrowClass, NarrowClass, NarrowClass]

    def class_product(self) -> BinaryQuadraticForm:
        """Product of the three underlying classes in Cl(D)."""
        first, second, third = (item.form for item in self.classes)
        return compose(compose(first, second), third)

    def sign_product(self) -> int:
        return self.classes[0].sign * self.classes[1].sign * self.classes[2].sign


def orbit_invariants(cube: Cube) -> OrbitInvariants:
    """D and the narrow classes of Q1, Q2, Q3 for a projective cube with D < 0.

    Raises:
        InvalidInputError: If the cube is not projective or D >= 0
    """
    forms = cube_forms(cube)
    disc = forms[0].discriminant
    if disc >= 0:
        raise InvalidInputError(f"cube {cube.serialize()} has discriminant {disc} >= 0")
    if not is_projective(cube):
        raise InvalidInputError(f"cube {cube.serialize()} is not projective")
    first, second, third = (bqf_reduce(form) for form in forms)
    invariants = OrbitInvariants(disc=disc, classes=(first, second, third))
    assert invariants.class_product() == BinaryQuadraticForm.principal(disc), (
        f"class product of cube {cube.serialize()} is not principal"
    )
    return invariants
