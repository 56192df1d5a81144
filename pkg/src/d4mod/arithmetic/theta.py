"""Fourier coefficients of the two exceptional theta lifts of the constant form.

Kim's lift:
    rho(a1, a2, a3) = 240 * sum over integral rank one A >= 0 with diag(A) = a
                      of sigma3(content(A))

and the identity rho(a) = e4(a1) e4(a2) e4(a3) is checked term by term.
Rank one elements are enumerated by completion: with c the smallest non-zero
diagonal entry, alpha runs over the shell N = bc, beta over N = ca, and
gamma = conj(alpha beta) / c must be integral. N(gamma) = ab then holds
automatically; the two remaining adjoint entries are checked on every
candidate.

Cube coefficients:
    a_c = #{(alpha, beta, gamma) : N(alpha) = -e, N(beta) = -f, N(gamma) = -g,
            Tr(alpha beta gamma) = m}

counted as <conj(alpha beta), gamma> = m, grouping identical conj(alpha beta).

Classes:
    - EisensteinSeries: q-expansion of the weight 4 Eisenstein series
    - RhoResult: one row of the e4 x e4 x e4 verification
    - PartnerStack: inner shell rows with their multiplication stack, shared by all chunks
    - QTStructure: three quadratic forms and a (partially known) trilinear form

Reference: H. Kim, "Exceptional modular form of weight 4 on an exceptional
domain contained in C^27", Rev. Mat. Iberoamericana 9 (1993)
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import partial
from typing import Any

import numpy as np
from sympy import divisor_sigma

from ..exceptions import InvalidInputError, ResourceLimitError
from ..parallel import WorkerPool, partition_rows
from .common import OCTONION_DIMENSION, IntMatrix, check_int64_headroom, max_abs
from .cubes import Cube, discriminant, normalize
from .forms import BinaryQuadraticForm
from .jordan import JordanElement
from .lattice import ShellStore
from .octonion import (
    GRAM,
    GRAM_MATRIX,
    STRUCTURE_TENSOR,
    TRILINEAR,
    Octonion,
    batch_conj,
    batch_mul,
    batch_norm,
)

logger = logging.getLogger(__name__)

E4_WEIGHT = 4
E4_NORMALIZATION = 240

# Rows x shell size handled per block when matching inner products
_MATCH_BLOCK = 1 << 20


# =============================================================================
# Eisenstein series
# =============================================================================


def sigma3(n: int) -> int:
    """Sum of the cubes of the divisors of n.

    Raises:
        InvalidInputError: If n < 1
    """
    if n < 1:
        raise InvalidInputError(f"sigma3 needs a positive integer, got {n}")
    return int(divisor_sigma(n, 3))


def e4_coeff(n: int) -> int:
    """The n-th coefficient of E4: 1 for n = 0, 240 sigma3(n) otherwise."""
    if n < 0:
        raise InvalidInputError(f"coefficient index must be non-negative, got {n}")
    if n == 0:
        return 1
    return E4_NORMALIZATION * sigma3(n)


@dataclass(frozen=True, kw_only=True)
class EisensteinSeries:
    """The Eisenstein series E4 = 1 + 240 sum sigma3(n) q^n."""

    weight: int = E4_WEIGHT

    def __post_init__(self) -> None:
        if self.weight != E4_WEIGHT:
            raise InvalidInputError(f"only weight {E4_WEIGHT} is supported, got {self.weight}")

    def coefficient(self, n: int) -> int:
        return e4_coeff(n)

    def coefficients(self, n_max: int) -> list[int]:
        return [e4_coeff(n) for n in range(n_max + 1)]


def kim_coeff_from_content(content: int) -> int:
    """240 sigma3(content)."""
    return E4_NORMALIZATION * sigma3(content)


def kim_coeff(phi: JordanElement) -> int:
    """Fourier coefficient of a positive semi-definite rank one element.

    Raises:
        InvalidInputError: If phi is not rank one and positive semi-definite
    """
    if not phi.is_psd_rank1():
        raise InvalidInputError("Kim's coefficient formula needs a PSD rank one element")
    return kim_coeff_from_content(phi.content())


# =============================================================================
# Pair kernels
# =============================================================================


@dataclass(frozen=True, slots=True)
class PartnerStack:
    """Rows of the inner shell with their right-multiplication stack.

    alpha_rows @ stack lists every product alpha * beta, alpha-major. The stack
    is built once per counting call and shared by every chunk.
    """

    rows: np.ndarray
    stack: np.ndarray
    bound: int

    @classmethod
    def build(cls, rows: np.ndarray) -> PartnerStack:
        stack = np.einsum("mj,ijk->imk", rows, STRUCTURE_TENSOR)
        stack = stack.reshape(OCTONION_DIMENSION, len(rows) * OCTONION_DIMENSION)
        return cls(rows=rows, stack=stack, bound=max_abs(stack))

    def __len__(self) -> int:
        return len(self.rows)


def _pair_products(alpha_rows: np.ndarray, partners: PartnerStack) -> np.ndarray:
    """All products alpha * beta as an (n * m, 8) array, alpha-major."""
    check_int64_headroom(max_abs(alpha_rows), partners.bound, OCTONION_DIMENSION)
    return (alpha_rows @ partners.stack).reshape(-1, OCTONION_DIMENSION)


def _complete_rank1(
    diag: tuple[int, int, int], alpha_rows: np.ndarray, partners: PartnerStack
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Requires c > 0; alpha_rows lie in the shell bc and the partners in ca
    a, b, c = diag
    empty = np.zeros((0, OCTONION_DIMENSION), dtype=np.int64)
    if len(alpha_rows) == 0 or len(partners) == 0:
        return empty, empty, empty

    numerators = batch_conj(_pair_products(alpha_rows, partners))
    index = np.flatnonzero(np.all(numerators % c == 0, axis=1))
    alpha = alpha_rows[index // len(partners)]
    beta = partners.rows[index % len(partners)]
    gamma = numerators[index] // c

    keep = batch_norm(gamma) == a * b
    keep &= np.all(batch_conj(batch_mul(beta, gamma)) == a * alpha, axis=1)
    keep &= np.all(batch_conj(batch_mul(gamma, alpha)) == b * beta, axis=1)
    return alpha[keep], beta[keep], gamma[keep]


def _contents(diag: tuple[int, int, int], alpha: np.ndarray, beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    entries = np.concatenate([alpha, beta, gamma], axis=1)
    return np.gcd(np.gcd.reduce(entries, axis=1), math.gcd(*diag))


def _rho_chunk(diag: tuple[int, int, int], partners: PartnerStack, alpha_rows: np.ndarray) -> int:
    alpha, beta, gamma = _complete_rank1(diag, alpha_rows, partners)
    values, counts = np.unique(_contents(diag, alpha, beta, gamma), return_counts=True)
    return sum(int(count) * sigma3(int(value)) for value, count in zip(values, counts, strict=True))


def _cube_chunk(m: int, partners: PartnerStack, gamma_rows: np.ndarray, alpha_rows: np.ndarray) -> int:
    if len(alpha_rows) == 0 or len(partners) == 0 or len(gamma_rows) == 0:
        return 0
    targets = batch_conj(_pair_products(alpha_rows, partners))
    distinct, multiplicity = np.unique(targets, axis=0, return_counts=True)
    projected = distinct @ GRAM_MATRIX
    block = max(1, _MATCH_BLOCK // len(gamma_rows))
    total = 0
    for start in range(0, len(distinct), block):
        values = projected[start : start + block] @ gamma_rows.T
        hits = np.count_nonzero(values == m, axis=1)
        total += int(hits @ multiplicity[start : start + block])
    return total


# =============================================================================
# Rank one enumeration and rho
# =============================================================================


def _checked_diag(values: Sequence[int], store: ShellStore) -> tuple[int, int, int]:
    if len(values) != 3:
        raise InvalidInputError(f"a diagonal has three entries, got {len(values)}")
    diag = (int(values[0]), int(values[1]), int(values[2]))
    if any(value < 0 for value in diag):
        raise InvalidInputError(f"diagonal entries must be non-negative, got {diag}")
    a, b, c = diag
    largest = max(a * b, b * c, c * a)
    if largest > store.max_norm:
        raise ResourceLimitError(f"diagonal {diag} needs shell norm {largest} > {store.max_norm}")
    return diag


def _orient(diag: tuple[int, int, int]) -> tuple[tuple[int, int, int], int]:
    # Rotate so that the last entry is the smallest non-zero one
    rotations = [diag, (diag[1], diag[2], diag[0]), (diag[2], diag[0], diag[1])]
    steps = min(range(3), key=lambda k: (rotations[k][2] == 0, rotations[k][2], k))
    return rotations[steps], steps


def enumerate_rank1_psd(values: Sequence[int], store: ShellStore | None = None) -> list[JordanElement]:
    """Every integral positive semi-definite rank one element with the given diagonal.

    Args:
        values: Diagonal (a, b, c), non-negative and not all zero
        store: Shell provider (default: a fresh in-memory store)

    Returns:
        The complete list, in the enumeration order of the alpha and beta shells

    Raises:
        InvalidInputError: If the diagonal is negative or zero
        ResourceLimitError: If a pairwise product exceeds the shell bound
    """
    store = store or ShellStore()
    diag = _checked_diag(values, store)
    if not any(diag):
        raise InvalidInputError("the zero diagonal has no rank one elements")

    rotated, steps = _orient(diag)
    a, b, c = rotated
    alpha_rows = store.vectors(b * c)
    beta_rows = store.vectors(c * a)
    partners = PartnerStack.build(beta_rows)
    elements = []
    for chunk in partition_rows(alpha_rows, len(beta_rows)):
        alpha, beta, gamma = _complete_rank1(rotated, chunk, partners)
        for x, y, z in zip(alpha.tolist(), beta.tolist(), gamma.tolist(), strict=True):
            element = JordanElement(
                a=a, b=b, c=c, alpha=Octonion.from_coords(x), beta=Octonion.from_coords(y), gamma=Octonion.from_coords(z)
            )
            elements.append(element.rotate(3 - steps))
    logger.debug("diag %s: %d rank one elements", diag, len(elements))
    return elements


def rho(values: Sequence[int], store: ShellStore | None = None, workers: int = 1) -> int:
    """Kim's coefficient rho(a1, a2, a3); rho(0, 0, 0) = 1.

    Args:
        values: Diagonal (a1, a2, a3), non-negative
        store: Shell provider (default: a fresh in-memory store)
        workers: Worker processes for the pair loop; the result does not depend on it

    Raises:
        InvalidInputError: If an entry is negative
        ResourceLimitError: If a pairwise product exceeds the shell bound
    """
    store = store or ShellStore()
    diag = _checked_diag(values, store)
    if not any(diag):
        return 1

    rotated, _ = _orient(diag)
    a, b, c = rotated
    alpha_rows = store.vectors(b * c)
    beta_rows = store.vectors(c * a)
    chunks = partition_rows(alpha_rows, len(beta_rows))
    logger.info("rho%s: %d x %d pairs in %d chunks", diag, len(alpha_rows), len(beta_rows), len(chunks))
    partners = PartnerStack.build(beta_rows)
    total = WorkerPool(workers).sum(partial(_rho_chunk, rotated, partners), chunks)
    return E4_NORMALIZATION * total


@dataclass(frozen=True, kw_only=True)
class RhoResult:
    """rho(diag) next to e4(a1) e4(a2) e4(a3)."""

    diag: tuple[int, int, int]
    rho: int
    expected: int

    @property
    def match(self) -> bool:
        return self.rho == self.expected

    def to_json(self) -> dict[str, Any]:
        return {"diag": list(self.diag), "rho": self.rho, "expected": self.expected, "match": self.match}


def rho_report(diag: tuple[int, int, int], store: ShellStore | None = None, workers: int = 1) -> RhoResult:
    value = rho(diag, store, workers)
    expected = math.prod(e4_coeff(n) for n in diag)
    return RhoResult(diag=diag, rho=value, expected=expected)


def e4_cube_diagonals(max_product: int) -> list[tuple[int, int, int]]:
    """Diagonals with entries and pairwise products at most max_product."""
    if max_product < 0:
        raise InvalidInputError(f"bound must be non-negative, got {max_product}")
    return [
        (a, b, c)
        for a, b, c in itertools.product(range(max_product + 1), repeat=3)
        if max(a * b, b * c, c * a) <= max_product
    ]


def verify_e4_cube(max_product: int, store: ShellStore | None = None, workers: int = 1) -> list[RhoResult]:
    """Compare rho with e4 x e4 x e4 on every diagonal up to max_product."""
    store = store or ShellStore()
    if max_product > store.max_norm:
        raise ResourceLimitError(f"bound {max_product} exceeds the shell bound {store.max_norm}")
    store.prefetch(max_product)
    results = []
    for diag in e4_cube_diagonals(max_product):
        result = rho_report(diag, store, workers)
        if not result.match:
            logger.warning("rho%s = %d, expected %d", diag, result.rho, result.expected)
        results.append(result)
    return results


# =============================================================================
# Cube coefficients
# =============================================================================


def cube_coefficient(cube: Cube, store: ShellStore | None = None, workers: int = 1) -> int:
    """Number of triples with N = (-e, -f, -g) and Tr(alpha beta gamma) = m.

    Cubes not in normal form are normalised first; the count is an orbit
    invariant.

    Raises:
        InvalidInputError: If the discriminant is 0, or the cube cannot be normalised
        ResourceLimitError: If a required shell exceeds the bound
    """
    store = store or ShellStore()
    if discriminant(cube) == 0:
        raise InvalidInputError(f"cube {cube.serialize()} has discriminant 0")
    normal = cube if cube.is_normal() else normalize(cube)[0]
    norms = (-normal.e, -normal.f, -normal.g)
    if min(norms) < 0:
        return 0
    alpha_rows, beta_rows, gamma_rows = (store.vectors(n) for n in norms)
    chunks = partition_rows(alpha_rows, len(beta_rows))
    logger.info("cube %s: norms %s, %d chunks", normal.serialize(), norms, len(chunks))
    partners = PartnerStack.build(beta_rows)
    return WorkerPool(workers).sum(partial(_cube_chunk, normal.m, partners, gamma_rows), chunks)


# =============================================================================
# QT-structures
# =============================================================================


def _form_gram(form: BinaryQuadraticForm) -> IntMatrix:
    return ((2 * form.a, form.b), (form.b, 2 * form.c))


@dataclass(frozen=True, kw_only=True)
class QTStructure:
    """Lattice of rank n with Q1, Q2, Q3 and a trilinear form T.

    Q_i(x) = x^T G_i x / 2 for the even Gram matrix G_i. `trilinear` holds
    the known values T(b_i, b_j, b_k) on basis vectors; missing keys are
    unknown.
    """

    rank: int
    grams: tuple[IntMatrix, IntMatrix, IntMatrix]
    trilinear: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for gram in self.grams:
            if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
                raise InvalidInputError(f"Gram matrix is not {self.rank}x{self.rank}")
            for i in range(self.rank):
                if gram[i][i] % 2:
                    raise InvalidInputError("Gram matrix must have an even diagonal")
                for j in range(i):
                    if gram[i][j] != gram[j][i]:
                        raise InvalidInputError("Gram matrix must be symmetric")

    def quadratic(self, index: int, x: tuple[int, ...]) -> int:
        """Q_index(x) for index in {0, 1, 2}."""
        gram = self.grams[index]
        return sum(x[i] * gram[i][j] * x[j] for i in range(self.rank) for j in range(self.rank)) // 2

    def is_known(self, i: int, j: int, k: int) -> bool:
        return (i, j, k) in self.trilinear

    def trilinear_value(self, i: int, j: int, k: int) -> int | None:
        return self.trilinear.get((i, j, k))

    def binary_forms(self) -> tuple[BinaryQuadraticForm, ...]:
        if self.rank != 2:
            raise InvalidInputError(f"binary forms need rank 2, got {self.rank}")
        return tuple(BinaryQuadraticForm(g[0][0] // 2, g[0][1], g[1][1] // 2) for g in self.grams)

    def to_json(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "grams": [[list(row) for row in gram] for gram in self.grams],
            "trilinear": {",".join(map(str, key)): value for key, value in sorted(self.trilinear.items())},
        }


def qt_from_cube(cube: Cube) -> QTStructure:
    """Rank 2 structure of a cube: Q_i from the faces, T(l, l, l) = m, T(u, u, u) = m^2 + 2efg.

    Mixed values of T are left unknown.

    Raises:
        InvalidInputError: If the cube is degenerate or cannot be normalised
    """
    if discriminant(cube) == 0:
        raise InvalidInputError(f"cube {cube.serialize()} has discriminant 0")
    normal = cube if cube.is_normal() else normalize(cube)[0]
    e, f, g, m = normal.e, normal.f, normal.g, normal.m
    forms = (
        BinaryQuadraticForm(-e, m, f * g),
        BinaryQuadraticForm(-f, m, e * g),
        BinaryQuadraticForm(-g, m, e * f),
    )
    return QTStructure(
        rank=2,
        grams=(_form_gram(forms[0]), _form_gram(forms[1]), _form_gram(forms[2])),
        trilinear={(0, 0, 0): m, (1, 1, 1): m * m + 2 * e * f * g},
    )


def coxeter_qt() -> QTStructure:
    """The order itself: Q1 = Q2 = Q3 = N and T = Tr(alpha beta gamma)."""
    n = OCTONION_DIMENSION
    return QTStructure(
        rank=n,
        grams=(GRAM, GRAM, GRAM),
        trilinear={(i, j, k): TRILINEAR[i][j][k] for i in range(n) for j in range(n) for k in range(n)},
    )
