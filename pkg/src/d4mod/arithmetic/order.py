"""Start-up self-check of an octonion order basis.

`verify_order` runs the axioms in a fixed sequence and stops at the first one
that fails, raising `OrderAxiomError` with the axiom name:

    closure       every beta_i * beta_j is an integral combination of the basis
    evenness      the Gram matrix of <x, y> = Tr(conj(x) y) is integral with even diagonal
    unimodularity det(Gram) = 1
    identity      1 lies in the span
    roots         exactly 240 elements of norm 1
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from ..exceptions import OrderAxiomError
from .common import OCTONION_DIMENSION, RationalVector, is_integral
from .enumeration import short_vectors
from .fano import COXETER_BASIS, OrderBasis, fano_mul

logger = logging.getLogger(__name__)

E8_ROOT_COUNT = 240

ORDER_AXIOMS: tuple[str, ...] = ("closure", "evenness", "unimodularity", "identity", "roots")

StructureConstants = tuple[tuple[RationalVector, ...], ...]


@dataclass(frozen=True, kw_only=True)
class OrderReport:
    """Outcome of a successful `verify_order` run."""

    basis_tag: str
    gram_determinant: int
    root_count: int
    checks: tuple[str, ...] = field(default=ORDER_AXIOMS)


def _check_closure(basis: OrderBasis, structure: StructureConstants) -> None:
    for i in range(OCTONION_DIMENSION):
        for j in range(OCTONION_DIMENSION):
            coords = structure[i][j]
            if not is_integral(coords):
                raise OrderAxiomError("closure", f"beta_{i} * beta_{j} has non-integral coordinates")
            expected = fano_mul(basis.vectors[i], basis.vectors[j])
            if basis.to_fano(coords) != expected:
                raise OrderAxiomError("closure", f"structure constants for beta_{i} * beta_{j} do not match the product")


def verify_order(basis: OrderBasis = COXETER_BASIS, structure: StructureConstants | None = None) -> OrderReport:
    """Verify that a basis spans an even unimodular order with 240 units.

    Args:
        basis: Candidate order basis (default: the shipped Coxeter basis)
        structure: Structure constants to validate instead of the ones
            recomputed from the basis (used to inject corrupted tables)

    Returns:
        OrderReport describing the verified basis

    Raises:
        OrderAxiomError: Naming the first axiom that fails
    """
    _check_closure(basis, structure if structure is not None else basis.structure_constants)

    gram = basis.gram
    if not all(is_integral(row) for row in gram):
        raise OrderAxiomError("evenness", "Gram matrix is not integral")
    if any(gram[i][i] % 2 for i in range(OCTONION_DIMENSION)):
        raise OrderAxiomError("evenness", "Gram matrix has an odd diagonal entry")

    integral_gram = [[int(value) for value in row] for row in gram]
    determinant = int(sympy.Matrix(integral_gram).det())
    if determinant != 1:
        raise OrderAxiomError("unimodularity", f"Gram determinant is {determinant}")

    if not is_integral(basis.from_fano((Fraction(1), *([Fraction(0)] * 7)))):
        raise OrderAxiomError("identity", "1 is not in the span of the basis")

    # N(x) = 1 means x^T G x = 2
    root_count = len(short_vectors(integral_gram, 2))
    if root_count != E8_ROOT_COUNT:
        raise OrderAxiomError("roots", f"found {root_count} elements of norm 1, expected {E8_ROOT_COUNT}")

    logger.debug("order basis %s verified", basis.tag)
    return OrderReport(basis_tag=basis.tag, gram_determinant=determinant, root_count=root_count)
