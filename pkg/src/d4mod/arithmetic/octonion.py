"""Exact arithmetic in Coxeter's order of integral octonions.

Elements are stored as 8 integer coordinates in the shipped order basis
(`fano.COXETER_BASIS`), and multiplication goes through a precomputed integer
structure-constant tensor. Python integers are unbounded, so the scalar API
cannot overflow; the vectorised numpy helpers check int64 headroom before
every batch.

Classes:
    - Octonion: element of the order, with norm, trace and the bilinear form
    - IsometryTriple: three rational 8x8 norm isometries acting on coordinates

Functions:
    - oct_mul / oct_conj / oct_trace / oct_norm / oct_bilinear / oct_trilinear
    - hermitian_d6: the Z[e0]-valued Hermitian form on the D6 sublattice
    - isotopy_triple_check: Tr(xi(a) upsilon(b) zeta(c)) = Tr(abc) on basis triples
    - nu_elements: the four sign triples with product 1
    - batch_mul / batch_conj / batch_norm / batch_trace / left_mul_matrix /
      right_mul_matrix: row-wise numpy versions for the counting loops

Reference: J. H. Conway, D. A. Smith, "On Quaternions and Octonions" (2003), ch. 9
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

import numpy as np

from ..exceptions import InvalidInputError
from .common import (
    OCTONION_DIMENSION,
    IntMatrix,
    IntVector,
    RationalMatrix,
    RationalVector,
    check_int64_headroom,
    gcd_all,
    is_integral,
    max_abs,
)
from .fano import COXETER_BASIS, fano_mul, fano_unit

# =============================================================================
# Integral tables of the shipped basis
# =============================================================================


def _integral_vector(values: RationalVector) -> IntVector:
    assert is_integral(values), f"shipped order basis is not closed: {values}"
    return tuple(int(value) for value in values)


STRUCTURE: tuple[tuple[IntVector, ...], ...] = tuple(
    tuple(_integral_vector(product) for product in row) for row in COXETER_BASIS.structure_constants
)
GRAM: IntMatrix = tuple(_integral_vector(row) for row in COXETER_BASIS.gram)
TRACE: IntVector = _integral_vector(COXETER_BASIS.trace_vector)

# Sparse multiplication table: _MUL_TERMS[i][j] lists (k, c) with c != 0
_MUL_TERMS: tuple[tuple[tuple[tuple[int, int], ...], ...], ...] = tuple(
    tuple(tuple((k, c) for k, c in enumerate(STRUCTURE[i][j]) if c) for j in range(OCTONION_DIMENSION))
    for i in range(OCTONION_DIMENSION)
)

# Norm as an integral quadratic form: N(x) = sum_{i<=j} n_ij x_i x_j
_NORM_TERMS: tuple[tuple[int, int, int], ...] = tuple(
    (i, j, GRAM[i][i] // 2 if i == j else GRAM[i][j])
    for i in range(OCTONION_DIMENSION)
    for j in range(i, OCTONION_DIMENSION)
    if GRAM[i][j]
)

STRUCTURE_TENSOR = np.array(STRUCTURE, dtype=np.int64)
GRAM_MATRIX = np.array(GRAM, dtype=np.int64)
TRACE_VECTOR = np.array(TRACE, dtype=np.int64)
_STRUCTURE_BOUND = max_abs(STRUCTURE_TENSOR)


# =============================================================================
# Octonion
# =============================================================================


@dataclass(frozen=True, slots=True)
class Octonion:
    """An element of Coxeter's order, in integer order-basis coordinates."""

    coords: IntVector

    def __post_init__(self) -> None:
        if len(self.coords) != OCTONION_DIMENSION:
            raise InvalidInputError(f"octonion needs 8 coordinates, got {len(self.coords)}")

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> Self:
        return cls(tuple(int(value) for value in coords))

    @classmethod
    def zero(cls) -> Self:
        return cls((0,) * OCTONION_DIMENSION)

    @classmethod
    def one(cls) -> Self:
        return cls.from_fano((1, 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def unit(cls, n: int) -> Self:
        """The imaginary unit e_n, n in 0..6."""
        return cls.from_fano(fano_unit(n))

    @classmethod
    def from_fano(cls, vector: Sequence[int | Fraction]) -> Self:
        """Build from Fano coordinates.

        Raises:
            InvalidInputError: If the vector does not lie in the order
        """
        coords = COXETER_BASIS.from_fano(vector)
        if not is_integral(coords):
            raise InvalidInputError(f"{tuple(str(v) for v in vector)} is not an integral octonion")
        return cls(tuple(int(value) for value in coords))

    def to_fano(self) -> RationalVector:
        return COXETER_BASIS.to_fano(self.coords)

    # -------------------------------------------------------------------------
    # Ring operations
    # -------------------------------------------------------------------------

    def __add__(self, other: Octonion) -> Octonion:
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: Octonion) -> Octonion:
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> Octonion:
        return Octonion(tuple(-a for a in self.coords))

    def __mul__(self, other: Octonion | int) -> Octonion:
        if isinstance(other, int):
            return Octonion(tuple(other * a for a in self.coords))
        result = [0] * OCTONION_DIMENSION
        for i, xi in enumerate(self.coords):
            if not xi:
                continue
            row = _MUL_TERMS[i]
            for j, yj in enumerate(other.coords):
                if not yj:
                    continue
                product = xi * yj
                for k, c in row[j]:
                    result[k] += c * product
        return Octonion(tuple(result))

    def __rmul__(self, other: int) -> Octonion:
        return Octonion(tuple(other * a for a in self.coords))

    def exact_div(self, divisor: int) -> Octonion | None:
        """Divide every coordinate by divisor, or return None if the quotient is not integral."""
        if divisor == 0:
            raise ZeroDivisionError("octonion division by zero")
        if any(a % divisor for a in self.coords):
            return None
        return Octonion(tuple(a // divisor for a in self.coords))

    # -------------------------------------------------------------------------
    # Forms
    # -------------------------------------------------------------------------

    def trace(self) -> int:
        return sum(t * a for t, a in zip(TRACE, self.coords, strict=True))

    def conj(self) -> Octonion:
        # conj(x) = Tr(x) * 1 - x, and 1 is the first basis vector
        t = self.trace()
        return Octonion((t - self.coords[0], *(-a for a in self.coords[1:])))

    def norm(self) -> int:
        x = self.coords
        return sum(n * x[i] * x[j] for i, j, n in _NORM_TERMS)

    def bilinear(self, other: Octonion) -> int:
        x, y = self.coords, other.coords
        return sum(x[i] * GRAM[i][j] * y[j] for i in range(OCTONION_DIMENSION) for j in range(OCTONION_DIMENSION))

    def content(self) -> int:
        return gcd_all(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


ONE = Octonion.one()
ZERO = Octonion.zero()
E0 = Octonion.unit(0)


# =============================================================================
# Functional API
# =============================================================================


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """Product of two integral octonions."""
    return x * y


def oct_conj(x: Octonion) -> Octonion:
    """Conjugate: Tr(x) - x."""
    return x.conj()


def oct_trace(x: Octonion) -> int:
    """Tr(x) = x + conj(x), an integer on the order."""
    return x.trace()


def oct_norm(x: Octonion) -> int:
    """N(x) with N(x) * 1 = x * conj(x)."""
    return x.norm()


def oct_bilinear(x: Octonion, y: Octonion) -> int:
    """<x, y> = Tr(conj(x) y); <x, x> = 2 N(x)."""
    return x.bilinear(y)


def oct_trilinear(x: Octonion, y: Octonion, z: Octonion) -> int:
    """Tr(xyz), which does not depend on how the product is associated."""
    return ((x * y) * z).trace()


# =============================================================================
# Hermitian form on the D6 sublattice
# =============================================================================


def in_d6_sublattice(d: Octonion) -> bool:
    """True when d is orthogonal to both 1 and e0."""
    return d.bilinear(ONE) == 0 and d.bilinear(E0) == 0


def hermitian_d6(d1: Octonion, d2: Octonion) -> Octonion:
    """h(d1, d2) = -d1 d2 + e0 (d1 d2) e0.

    The result equals -2 times the projection of d1 d2 onto span{1, e0}, so it
    lies in Z[e0], its real part is <d1, d2> and h(d, d) = 2 N(d).

    Raises:
        InvalidInputError: If either argument is not orthogonal to 1 and e0
    """
    for name, d in (("d1", d1), ("d2", d2)):
        if not in_d6_sublattice(d):
            raise InvalidInputError(f"{name} is not orthogonal to span{{1, e0}}")
    product = d1 * d2
    return -product + (E0 * product) * E0


def hermitian_d6_fano(d1: Sequence[Fraction | int], d2: Sequence[Fraction | int]) -> RationalVector:
    """The same Hermitian form on rational octonions given in Fano coordinates.

    Raises:
        InvalidInputError: If either vector has a nonzero 1 or e0 coordinate
    """
    for name, d in (("d1", d1), ("d2", d2)):
        if d[0] or d[1]:
            raise InvalidInputError(f"{name} is not orthogonal to span{{1, e0}}")
    e0 = fano_unit(0)
    product = fano_mul(d1, d2)
    twisted = fano_mul(fano_mul(e0, product), e0)
    return tuple(t - p for p, t in zip(product, twisted, strict=True))


# =============================================================================
# Isometry triples
# =============================================================================


def _trilinear_tensor() -> tuple[tuple[IntVector, ...], ...]:
    # T3[a][b][c] = Tr((beta_a beta_b) beta_c)
    basis_traces = [
        [sum(t * v for t, v in zip(TRACE, STRUCTURE[k][c], strict=True)) for c in range(OCTONION_DIMENSION)]
        for k in range(OCTONION_DIMENSION)
    ]
    return tuple(
        tuple(
            tuple(
                sum(STRUCTURE[a][b][k] * basis_traces[k][c] for k in range(OCTONION_DIMENSION))
                for c in range(OCTONION_DIMENSION)
            )
            for b in range(OCTONION_DIMENSION)
        )
        for a in range(OCTONION_DIMENSION)
    )


TRILINEAR: tuple[tuple[IntVector, ...], ...] = _trilinear_tensor()


def _identity_matrix(scale: int = 1) -> RationalMatrix:
    return tuple(
        tuple(Fraction(scale if i == j else 0) for j in range(OCTONION_DIMENSION)) for i in range(OCTONION_DIMENSION)
    )


def is_norm_isometry(matrix: RationalMatrix) -> bool:
    """True when M^T G M = G, i.e. N(Mx) = N(x) for every x."""
    if len(matrix) != OCTONION_DIMENSION or any(len(row) != OCTONION_DIMENSION for row in matrix):
        return False
    n = OCTONION_DIMENSION
    gm = [[sum((GRAM[i][k] * matrix[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    return all(
        sum((matrix[k][i] * gm[k][j] for k in range(n)), Fraction(0)) == GRAM[i][j] for i in range(n) for j in range(n)
    )


@dataclass(frozen=True, kw_only=True)
class IsometryTriple:
    """Three norm isometries (xi, upsilon, zeta) acting on order coordinates.

    Each matrix acts on column vectors: the image of the i-th basis vector is
    the i-th column.

    Raises:
        InvalidInputError: If any matrix does not preserve the norm form
    """

    xi: RationalMatrix
    upsilon: RationalMatrix
    zeta: RationalMatrix

    def __post_init__(self) -> None:
        for name in ("xi", "upsilon", "zeta"):
            if not is_norm_isometry(getattr(self, name)):
                raise InvalidInputError(f"{name} is not an isometry of the norm form")

    @classmethod
    def signs(cls, xi: int, upsilon: int, zeta: int) -> Self:
        """The triple (xi * id, upsilon * id, zeta * id) for signs in {+1, -1}."""
        return cls(xi=_identity_matrix(xi), upsilon=_identity_matrix(upsilon), zeta=_identity_matrix(zeta))

    @classmethod
    def identity(cls) -> Self:
        return cls.signs(1, 1, 1)


def _contract(matrix: RationalMatrix, tensor: list[list[list[Fraction]]], axis: int) -> list[list[list[Fraction]]]:
    n = OCTONION_DIMENSION
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for i in range(n):
            m = matrix[a][i]
            if not m:
                continue
            for p in range(n):
                for q in range(n):
                    if axis == 0:
                        out[i][p][q] += m * tensor[a][p][q]
                    elif axis == 1:
                        out[p][i][q] += m * tensor[p][a][q]
                    else:
                        out[p][q][i] += m * tensor[p][q][a]
    return out


def isotopy_triple_check(triple: IsometryTriple) -> bool:
    """Check Tr(xi(b_i) upsilon(b_j) zeta(b_k)) = Tr(b_i b_j b_k) for all 512 basis triples."""
    tensor = [[[Fraction(v) for v in row] for row in plane] for plane in TRILINEAR]
    tensor = _contract(triple.xi, tensor, 0)
    tensor = _contract(triple.upsilon, tensor, 1)
    tensor = _contract(triple.zeta, tensor, 2)
    return all(
        tensor[i][j][k] == TRILINEAR[i][j][k]
        for i in range(OCTONION_DIMENSION)
        for j in range(OCTONION_DIMENSION)
        for k in range(OCTONION_DIMENSION)
    )


def nu_elements() -> tuple[IsometryTriple, ...]:
    """The four triples of signs (xi, upsilon, zeta) with xi * upsilon * zeta = 1."""
    return tuple(
        IsometryTriple.signs(a, b, a * b) for a in (1, -1) for b in (1, -1)
    )


# =============================================================================
# Vectorised helpers (rows of an (n, 8) int64 array are octonions)
# =============================================================================


def as_array(elements: Iterable[Octonion]) -> np.ndarray:
    """Stack octonions into an (n, 8) int64 array."""
    rows = [x.coords for x in elements]
    if not rows:
        return np.zeros((0, OCTONION_DIMENSION), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def left_mul_matrix(x: Octonion | np.ndarray) -> np.ndarray:
    """Matrix L with (x * y) = y @ L for row vectors y."""
    coords = np.asarray(x.coords if isinstance(x, Octonion) else x, dtype=np.int64)
    return np.einsum("i,ijk->jk", coords, STRUCTURE_TENSOR)


def right_mul_matrix(x: Octonion | np.ndarray) -> np.ndarray:
    """Matrix R with (y * x) = y @ R for row vectors y."""
    coords = np.asarray(x.coords if isinstance(x, Octonion) else x, dtype=np.int64)
    return np.einsum("j,ijk->ik", coords, STRUCTURE_TENSOR)


def batch_mul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Row-wise products of two (n, 8) arrays.

    Raises:
        OverflowError: If intermediate values could leave int64 range
    """
    check_int64_headroom(max_abs(left), max_abs(right), _STRUCTURE_BOUND, OCTONION_DIMENSION**2)
    return np.einsum("ni,nj,ijk->nk", left, right, STRUCTURE_TENSOR)


def batch_conj(rows: np.ndarray) -> np.ndarray:
    result = -rows
    result[:, 0] += rows @ TRACE_VECTOR
    return result


def batch_trace(rows: np.ndarray) -> np.ndarray:
    return rows @ TRACE_VECTOR


def batch_norm(rows: np.ndarray) -> np.ndarray:
    check_int64_headroom(max_abs(rows), max_abs(rows), max_abs(GRAM_MATRIX), OCTONION_DIMENSION**2)
    return np.einsum("ni,ij,nj->n", rows, GRAM_MATRIX, rows) // 2


def batch_bilinear(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return np.einsum("ni,ij,nj->n", left, GRAM_MATRIX, right)
