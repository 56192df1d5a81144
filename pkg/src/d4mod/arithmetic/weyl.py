"""W(E8)-invariant harmonic polynomials, evaluated exactly on the 240 units.

The roots are the 240 elements of norm 1, so <r, r> = 2 for the bilinear
form <x, y> = Tr(conj(x) y). Polynomials are never expanded: a degree d
invariant is stored as coefficients c_k of the basis

    h_d = sum_k c_k r^(2k) P_(d-2k),   P_j(x) = sum_roots <r, x>^j,  r^2 = <x, x>

and the Laplacian (for <, >) acts on this basis by

    Lap(r^(2k) P_j) = 2k (2k + 2j + 6) r^(2k-2) P_j + 2j (j - 1) r^(2k) P_(j-2)

With c_0 = 1 harmonicity fixes every other coefficient through

    c_(k+1) = -c_k (d - 2k)(d - 2k - 1) / ((k + 1)(2d - 2k + 4))

Evaluation is exact: points are rational order coordinates, pairings are
computed over a common denominator and every value is a Fraction.

Classes:
    - RootSystem: the roots, the lexicographically positive half and reflections
    - InvariantRep: degree and coefficients of h_d in the r^(2k) P_(d-2k) basis
    - SkewInvariant: the product of <r, x> over the positive roots

Reference: J. E. Humphreys, "Reflection Groups and Coxeter Groups" (1990), ch. 3
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Any

from ..exceptions import InvalidInputError
from .common import OCTONION_DIMENSION, IntVector, RationalVector, as_fraction_vector
from .fano import COXETER_BASIS
from .lattice import enumerate_shell
from .octonion import GRAM

ROOT_COUNT = 240
POSITIVE_ROOT_COUNT = 120
MAX_INVARIANT_DEGREE = 30

# Degrees of the basic invariants of W(E8); 2 is r^2, which is not harmonic
FUNDAMENTAL_DEGREES: tuple[int, ...] = (2, 8, 12, 14, 18, 20, 24, 30)


# =============================================================================
# Root system
# =============================================================================


def _scaled(x: Sequence[int | Fraction]) -> tuple[IntVector, int]:
    """Write x = X / D with X integral and D > 0."""
    if len(x) != OCTONION_DIMENSION:
        raise InvalidInputError(f"a point has 8 coordinates, got {len(x)}")
    values = as_fraction_vector(x)
    denominator = math.lcm(*(value.denominator for value in values))
    return tuple(int(value * denominator) for value in values), denominator


def _is_positive(root: IntVector) -> bool:
    for value in root:
        if value:
            return value > 0
    return False


class RootSystem:
    """The E8 root system realised on the units of the order."""

    # Public attributes
    roots: tuple[IntVector, ...]
    positive_roots: tuple[IntVector, ...]

    # Private attributes
    _duals: tuple[IntVector, ...]
    _positive_duals: tuple[IntVector, ...]
    _root_set: frozenset[IntVector]

    def __init__(self) -> None:
        """Enumerate the roots and fix the positive half."""
        self.roots = tuple(tuple(int(v) for v in row) for row in enumerate_shell(1).vectors.tolist())
        assert len(self.roots) == ROOT_COUNT
        self.positive_roots = tuple(r for r in self.roots if _is_positive(r))
        assert len(self.positive_roots) == POSITIVE_ROOT_COUNT
        self._duals = tuple(self._dual(r) for r in self.roots)
        self._positive_duals = tuple(self._dual(r) for r in self.positive_roots)
        self._root_set = frozenset(self.roots)

    @staticmethod
    def _dual(root: IntVector) -> IntVector:
        # Row of G r, so that <r, x> = dual . x
        return tuple(sum(GRAM[i][j] * root[j] for j in range(OCTONION_DIMENSION)) for i in range(OCTONION_DIMENSION))

    def is_root(self, r: Sequence[int | Fraction]) -> bool:
        values = as_fraction_vector(r)
        if any(value.denominator != 1 for value in values):
            return False
        return tuple(int(value) for value in values) in self._root_set

    def pairing(self, x: Sequence[int | Fraction], y: Sequence[int | Fraction]) -> Fraction:
        """<x, y> for rational order coordinates."""
        xs, ys = as_fraction_vector(x), as_fraction_vector(y)
        return sum(
            (xs[i] * GRAM[i][j] * ys[j] for i in range(OCTONION_DIMENSION) for j in range(OCTONION_DIMENSION)),
            Fraction(0),
        )

    def root_pairings(self, x: Sequence[int | Fraction], *, positive: bool = False) -> tuple[list[int], int]:
        """Numerators of <r, x> over all (or the positive) roots, and their common denominator."""
        scaled, denominator = _scaled(x)
        duals = self._positive_duals if positive else self._duals
        return [sum(d * v for d, v in zip(dual, scaled, strict=True)) for dual in duals], denominator

    def reflect(self, r: Sequence[int | Fraction], x: Sequence[int | Fraction]) -> RationalVector:
        """s_r(x) = x - <r, x> r.

        Raises:
            InvalidInputError: If r is not a root
        """
        if not self.is_root(r):
            raise InvalidInputError(f"{tuple(str(v) for v in r)} is not a root")
        factor = self.pairing(r, x)
        return tuple(Fraction(xi) - factor * ri for xi, ri in zip(x, r, strict=True))


@cache
def default_root_system() -> RootSystem:
    return RootSystem()


def generic_point() -> RationalVector:
    """The point with Fano coordinates (1, 3, 9, ..., 3^7), off every reflection hyperplane.

    Each <r, x> is a sum of d_i 3^i with |d_i| <= 2 not all zero, which never vanishes.
    """
    return COXETER_BASIS.from_fano(tuple(3**i for i in range(OCTONION_DIMENSION)))


# =============================================================================
# Power sums and harmonic invariants
# =============================================================================


def power_sum_eval(degree: int, x: Sequence[int | Fraction], system: RootSystem | None = None) -> Fraction:
    """P_d(x) = sum over the roots of <r, x>^d (0 for odd d)."""
    if degree < 0:
        raise InvalidInputError(f"degree must be non-negative, got {degree}")
    if degree % 2:
        return Fraction(0)
    system = system or default_root_system()
    numerators, denominator = system.root_pairings(x)
    return Fraction(sum(v**degree for v in numerators), denominator**degree)


@dataclass(frozen=True, kw_only=True)
class InvariantRep:
    """h = sum_k coeffs[k] r^(2k) P_(degree - 2k)."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 2 or self.degree % 2:
            raise InvalidInputError(f"invariant degree must be even and at least 2, got {self.degree}")
        if len(self.coeffs) != self.degree // 2 + 1:
            raise InvalidInputError(f"degree {self.degree} needs {self.degree // 2 + 1} coefficients")
        if self.coeffs[0] != 1:
            raise InvalidInputError("the leading coefficient c_0 must be 1")

    @classmethod
    def power_sum(cls, degree: int) -> InvariantRep:
        """The raw P_d, which is invariant but not harmonic."""
        return cls(degree=degree, coeffs=(Fraction(1),) + (Fraction(0),) * (degree // 2))

    def to_json(self) -> dict[str, Any]:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}


def harmonic_project(degree: int) -> InvariantRep:
    """The harmonic invariant with c_0 = 1 in the r^(2k) P_(d-2k) basis.

    Raises:
        InvalidInputError: If degree is odd or outside 2..30
    """
    if degree % 2 or not 2 <= degree <= MAX_INVARIANT_DEGREE:
        raise InvalidInputError(f"degree must be even in 2..{MAX_INVARIANT_DEGREE}, got {degree}")
    coeffs = [Fraction(1)]
    for k in range(degree // 2):
        j = degree - 2 * k
        coeffs.append(-coeffs[k] * (j * (j - 1)) / ((k + 1) * (2 * degree - 2 * k + 4)))
    return InvariantRep(degree=degree, coeffs=tuple(coeffs))


def laplacian_coefficients(rep: InvariantRep) -> tuple[Fraction, ...]:
    """Coefficients of Lap(h) in the basis r^(2k) P_(d-2-2k), k = 0 .. d/2 - 1."""
    d, c = rep.degree, rep.coeffs
    return tuple(
        c[k + 1] * 2 * (k + 1) * (2 * d - 2 * k + 4) + c[k] * 2 * (d - 2 * k) * (d - 2 * k - 1) for k in range(d // 2)
    )


def laplacian_check(rep: InvariantRep) -> bool:
    """True when the Laplacian of rep is the zero combination."""
    return all(value == 0 for value in laplacian_coefficients(rep))


def invariant_eval(rep: InvariantRep, x: Sequence[int | Fraction], system: RootSystem | None = None) -> Fraction:
    """sum_k c_k <x, x>^k P_(d-2k)(x), exactly."""
    system = system or default_root_system()
    numerators, denominator = system.root_pairings(x)
    scaled, _ = _scaled(x)
    # <x, x> * D^2 and P_j(x) * D^j are integers
    radius = sum(scaled[i] * GRAM[i][j] * scaled[j] for i in range(OCTONION_DIMENSION) for j in range(OCTONION_DIMENSION))
    total = Fraction(0)
    for k, coefficient in enumerate(rep.coeffs):
        if coefficient == 0:
            continue
        j = rep.degree - 2 * k
        power_sum = ROOT_COUNT if j == 0 else sum(v**j for v in numerators)
        total += coefficient * radius**k * power_sum
    return total / denominator**rep.degree


# =============================================================================
# Skew invariant
# =============================================================================


class SkewInvariant:
    """Product of <r, x> over the 120 positive roots; changes sign under every reflection."""

    # Public attributes
    system: RootSystem

    def __init__(self, system: RootSystem | None = None) -> None:
        self.system = system or default_root_system()

    @property
    def degree(self) -> int:
        return len(self.system.positive_roots)

    @property
    def factors(self) -> tuple[IntVector, ...]:
        return self.system.positive_roots

    def __call__(self, x: Sequence[int | Fraction]) -> Fraction:
        numerators, denominator = self.system.root_pairings(x, positive=True)
        return Fraction(math.prod(numerators), denominator ** len(numerators))


def skew_eval(x: Sequence[int | Fraction], system: RootSystem | None = None) -> Fraction:
    return SkewInvariant(system)(x)


def reflect(r: Sequence[int | Fraction], x: Sequence[int | Fraction], system: RootSystem | None = None) -> RationalVector:
    return (system or default_root_system()).reflect(r, x)
