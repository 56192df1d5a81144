"""Split octonions: Cayley-Dickson doubling of the integer 2x2 matrices.

An element is a pair (u, v) of integer 2x2 matrices with

    (u, v) * (z, w) = (u z - conj(w) v,  w u + v conj(z))

where conj is the main involution of M2. Conjugation is (conj(u), -v), and
x * conj(x) = (det u + det v) * 1, so the norm is det(u) + det(v): a form of
signature (4, 4). The order M2(Z) + M2(Z) is closed under this product.

Classes:
    - SplitOctonion: element of the split order

Functions:
    - split_mul / split_conj / split_norm / split_trace / split_trilinear
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Self

from ..exceptions import InvalidInputError
from .quaternion import (
    MAT2_IDENTITY,
    MAT2_ZERO,
    Mat2,
    mat2_add,
    mat2_bar,
    mat2_det,
    mat2_mul,
    mat2_neg,
    mat2_sub,
    mat2_trace,
)


@dataclass(frozen=True, slots=True)
class SplitOctonion:
    """Pair (u, v) of integer 2x2 matrices."""

    u: Mat2
    v: Mat2

    @classmethod
    def one(cls) -> Self:
        return cls(MAT2_IDENTITY, MAT2_ZERO)

    @classmethod
    def zero(cls) -> Self:
        return cls(MAT2_ZERO, MAT2_ZERO)

    @classmethod
    def from_quaternion(cls, u: Mat2) -> Self:
        """Embed the split quaternion order M2(Z) as (u, 0)."""
        return cls(u, MAT2_ZERO)

    @classmethod
    def from_entries(cls, entries: tuple[int, ...]) -> Self:
        """Build from 8 integers: u row-major, then v row-major.

        Raises:
            InvalidInputError: If there are not exactly 8 entries
        """
        if len(entries) != 8:
            raise InvalidInputError(f"split octonion needs 8 entries, got {len(entries)}")
        a, b, c, d, e, f, g, h = entries
        return cls(((a, b), (c, d)), ((e, f), (g, h)))

    def entries(self) -> tuple[int, ...]:
        return (*self.u[0], *self.u[1], *self.v[0], *self.v[1])

    def __add__(self, other: SplitOctonion) -> SplitOctonion:
        return SplitOctonion(mat2_add(self.u, other.u), mat2_add(self.v, other.v))

    def __sub__(self, other: SplitOctonion) -> SplitOctonion:
        return SplitOctonion(mat2_sub(self.u, other.u), mat2_sub(self.v, other.v))

    def __neg__(self) -> SplitOctonion:
        return SplitOctonion(mat2_neg(self.u), mat2_neg(self.v))

    def __mul__(self, other: SplitOctonion) -> SplitOctonion:
        u, v = self.u, self.v
        z, w = other.u, other.v
        return SplitOctonion(
            mat2_sub(mat2_mul(u, z), mat2_mul(mat2_bar(w), v)),
            mat2_add(mat2_mul(w, u), mat2_mul(v, mat2_bar(z))),
        )

    def conj(self) -> SplitOctonion:
        return SplitOctonion(mat2_bar(self.u), mat2_neg(self.v))

    def norm(self) -> int:
        return mat2_det(self.u) + mat2_det(self.v)

    def trace(self) -> int:
        return mat2_trace(self.u)


def split_mul(x: SplitOctonion, y: SplitOctonion) -> SplitOctonion:
    return x * y


def split_conj(x: SplitOctonion) -> SplitOctonion:
    return x.conj()


def split_norm(x: SplitOctonion) -> int:
    """det(u) + det(v); satisfies N(x) * 1 = x * conj(x)."""
    return x.norm()


def split_trace(x: SplitOctonion) -> int:
    return x.trace()


def split_trilinear(x: SplitOctonion, y: SplitOctonion, z: SplitOctonion) -> int:
    return ((x * y) * z).trace()
