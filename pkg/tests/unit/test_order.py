"""Unit tests for the order self-check, the Hurwitz order and split octonions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from src.d4mod.arithmetic import quaternion
from src.d4mod.arithmetic.fano import COXETER_BASIS
from src.d4mod.arithmetic.order import ORDER_AXIOMS, verify_order
from src.d4mod.arithmetic.quaternion import (
    MAT2_IDENTITY,
    hurwitz_gram,
    mat2_bar,
    mat2_det,
    mat2_mul,
    quaternion_mul,
    verify_hurwitz_order,
)
from src.d4mod.arithmetic.split import SplitOctonion, split_conj, split_mul, split_norm, split_trilinear
from src.d4mod.exceptions import D4ModError, InvalidInputError, OrderAxiomError

# =============================================================================
# Test Constants - Duplicated from src for test isolation
# =============================================================================

TEST_E8_ROOT_COUNT = 240
TEST_HURWITZ_UNIT_COUNT = 24

# =============================================================================
# Helper Functions
# =============================================================================


def _random_split(rng: random.Random) -> SplitOctonion:
    return SplitOctonion.from_entries(tuple(rng.randint(-4, 4) for _ in range(8)))


# =============================================================================
# Order Verification Tests
# =============================================================================


@pytest.mark.unit
class TestVerifyOrder:
    """Tests for verify_order."""

    def test_shipped_basis_passes(self) -> None:
        """Test that the Coxeter basis passes every axiom."""
        report = verify_order()
        assert report.basis_tag == COXETER_BASIS.tag
        assert report.gram_determinant == 1
        assert report.root_count == TEST_E8_ROOT_COUNT
        assert report.checks == ORDER_AXIOMS

    def test_corrupted_structure_constants(self) -> None:
        """Test that a non-integral structure constant fails closure."""
        structure = [list(row) for row in COXETER_BASIS.structure_constants]
        structure[1][2] = (Fraction(1, 2),) + structure[1][2][1:]
        with pytest.raises(OrderAxiomError, match="closure") as info:
            verify_order(structure=tuple(tuple(row) for row in structure))
        assert info.value.axiom == "closure"

    def test_wrong_structure_constants(self) -> None:
        """Test that integral but wrong structure constants fail closure."""
        structure = [list(row) for row in COXETER_BASIS.structure_constants]
        structure[0][0] = structure[0][1]
        with pytest.raises(OrderAxiomError) as info:
            verify_order(structure=tuple(tuple(row) for row in structure))
        assert info.value.axiom == "closure"

    def test_scaled_basis_not_unimodular(self) -> None:
        """Test that 2 * order is closed and even but fails unimodularity."""
        with pytest.raises(OrderAxiomError) as info:
            verify_order(COXETER_BASIS.scaled(2))
        assert info.value.axiom == "unimodularity"


# =============================================================================
# Hurwitz Order Tests
# =============================================================================


@pytest.mark.unit
class TestHurwitzOrder:
    """Tests for the Hurwitz quaternion order."""

    def test_unit_count(self) -> None:
        """Test that the Hurwitz order has 24 units."""
        assert verify_hurwitz_order() == TEST_HURWITZ_UNIT_COUNT

    def test_gram_is_d4(self) -> None:
        """Test that the Gram matrix is even with determinant 4."""
        gram = hurwitz_gram()
        assert all(gram[i][i] == 2 for i in range(4))
        assert sympy.Matrix(gram).det() == 4

    def test_wrong_gram_determinant_fails(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that the self-check rejects a Gram matrix whose determinant is not 4."""
        scaled = tuple(tuple(2 * value for value in row) for row in hurwitz_gram())
        monkeypatch.setattr(quaternion, "hurwitz_gram", lambda: scaled)
        with pytest.raises(AssertionError, match="determinant is 64"):
            verify_hurwitz_order()

    def test_quaternion_product(self) -> None:
        """Test i j = k and j i = -k."""
        i, j = (0, 1, 0, 0), (0, 0, 1, 0)
        assert quaternion_mul(i, j) == (0, 0, 0, 1)
        assert quaternion_mul(j, i) == (0, 0, 0, -1)


# =============================================================================
# Split Octonion Tests
# =============================================================================


@pytest.mark.unit
class TestMat2:
    """Tests for the 2x2 integer matrix helpers."""

    def test_bar_is_adjugate(self) -> None:
        """Test x bar(x) = det(x) I."""
        x = ((3, 5), (-2, 7))
        assert mat2_mul(x, mat2_bar(x)) == ((mat2_det(x), 0), (0, mat2_det(x)))

    def test_identity(self) -> None:
        """Test that the identity is neutral."""
        x = ((1, 2), (3, 4))
        assert mat2_mul(MAT2_IDENTITY, x) == x


@pytest.mark.unit
class TestSplitOctonion:
    """Tests for the split octonion order."""

    def test_norm_is_multiplicative(self, rng: random.Random) -> None:
        """Test N(xy) = N(x) N(y)."""
        for _ in range(25):
            x, y = _random_split(rng), _random_split(rng)
            assert split_norm(split_mul(x, y)) == split_norm(x) * split_norm(y)

    def test_conjugate(self, rng: random.Random) -> None:
        """Test x conj(x) = N(x) 1."""
        x = _random_split(rng)
        n = split_norm(x)
        assert split_mul(x, split_conj(x)) == SplitOctonion(((n, 0), (0, n)), ((0, 0), (0, 0)))

    def test_norm_is_determinant_sum(self) -> None:
        """Test N(u, v) = det(u) + det(v)."""
        x = SplitOctonion.from_entries((1, 2, 3, 4, 5, 6, 7, 8))
        assert x.norm() == (1 * 4 - 2 * 3) + (5 * 8 - 6 * 7)

    def test_indefinite(self) -> None:
        """Test that the norm takes both signs."""
        assert SplitOctonion.from_entries((1, 0, 0, 1, 0, 0, 0, 0)).norm() == 1
        assert SplitOctonion.from_entries((0, 1, 1, 0, 0, 0, 0, 0)).norm() == -1

    def test_alternative(self, rng: random.Random) -> None:
        """Test the left alternative law."""
        x, y = _random_split(rng), _random_split(rng)
        assert (x * x) * y == x * (x * y)

    def test_trilinear_cyclic(self, rng: random.Random) -> None:
        """Test Tr(xyz) = Tr(yzx)."""
        x, y, z = (_random_split(rng) for _ in range(3))
        assert split_trilinear(x, y, z) == split_trilinear(y, z, x)

    def test_quaternion_embedding(self) -> None:
        """Test that (u, 0)(w, 0) = (u w, 0)."""
        u, w = ((1, 2), (0, 1)), ((3, 0), (1, 1))
        assert SplitOctonion.from_quaternion(u) * SplitOctonion.from_quaternion(w) == SplitOctonion.from_quaternion(mat2_mul(u, w))

    @pytest.mark.parametrize("entries", [(1, 2, 3), tuple(range(9))], ids=["short", "long"])
    def test_wrong_entry_count(self, entries: tuple[int, ...]) -> None:
        """Test that from_entries needs eight integers and raises InvalidInputError otherwise."""
        with pytest.raises(InvalidInputError, match="8 entries") as info:
            SplitOctonion.from_entries(entries)
        assert isinstance(info.value, D4ModError)
