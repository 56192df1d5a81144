"""Unit tests for lattice enumeration and E8 shells."""

from __future__ import annotations

import numpy as np
import pytest

from src.d4mod.arithmetic.enumeration import fincke_pohst_decomposition, lattice_points, short_vectors
from src.d4mod.arithmetic.fano import FANO_LINES
from src.d4mod.arithmetic.lattice import (
    ShellStore,
    d6_roots,
    enumerate_shell,
    quaternion_suborder_units,
    theta_series,
)
from src.d4mod.arithmetic.octonion import ONE, Octonion
from src.d4mod.exceptions import InvalidInputError, ResourceLimitError

# =============================================================================
# Test Constants - Duplicated from src for test isolation
# =============================================================================

# Number of E8 vectors of norm n = 240 sigma3(n)
TEST_E8_THETA = (1, 240, 2160, 6720, 17520)
TEST_D6_ROOT_COUNT = 60
TEST_HURWITZ_UNIT_COUNT = 24

# =============================================================================
# Enumeration Tests
# =============================================================================


@pytest.mark.unit
class TestEnumeration:
    """Tests for the Fincke-Pohst enumerator."""

    def test_decomposition_of_identity(self) -> None:
        """Test that the identity Gram matrix decomposes to unit pivots."""
        q = fincke_pohst_decomposition(((1, 0), (0, 1)))
        assert q[0][0] == 1
        assert q[1][1] == 1
        assert q[0][1] == 0

    def test_z2_points(self) -> None:
        """Test the points of Z^2 in a disc of squared radius 2."""
        vectors, values = lattice_points(((1, 0), (0, 1)), 2)
        assert len(vectors) == 9
        assert sorted(values.tolist()) == [0, 1, 1, 1, 1, 2, 2, 2, 2]

    def test_a2_short_vectors(self) -> None:
        """Test that the hexagonal lattice has six minimal vectors."""
        assert len(short_vectors(((2, -1), (-1, 2)), 2)) == 6

    def test_lexicographic_order(self) -> None:
        """Test that results are sorted lexicographically."""
        vectors = short_vectors(((2, 1), (1, 2)), 2)
        rows = [tuple(row) for row in vectors.tolist()]
        assert rows == sorted(rows)

    def test_negative_bound_rejected(self) -> None:
        """Test that a negative bound raises InvalidInputError."""
        with pytest.raises(InvalidInputError, match="non-negative"):
            lattice_points(((1, 0), (0, 1)), -1)

    def test_indefinite_gram_rejected(self) -> None:
        """Test that an indefinite Gram matrix raises InvalidInputError."""
        with pytest.raises(InvalidInputError):
            lattice_points(((0, 1), (1, 0)), 4)


# =============================================================================
# Shell Tests
# =============================================================================


@pytest.mark.unit
class TestShells:
    """Tests for E8 shells in Coxeter's order."""

    def test_theta_series(self, shell_store: ShellStore) -> None:
        """Test that shell sizes are 1, 240, 2160, 6720, 17520."""
        assert theta_series(4, shell_store) == list(TEST_E8_THETA)

    @pytest.mark.parametrize("norm", [1, 2, 3], ids=["units", "norm_2", "norm_3"])
    def test_shell_elements_have_norm(self, shell_store: ShellStore, norm: int) -> None:
        """Test that every element of a shell has the requested norm."""
        shell = shell_store.get(norm)
        assert all(x.norm() == norm for x in shell.elements[:: max(1, shell.count // 50)])

    def test_shell_is_duplicate_free(self, shell_store: ShellStore) -> None:
        """Test that a shell contains no duplicates and is closed under negation."""
        vectors = shell_store.vectors(2)
        rows = {tuple(row) for row in vectors.tolist()}
        assert len(rows) == len(vectors)
        assert all(tuple(-v for v in row) in rows for row in rows)

    def test_zero_shell(self) -> None:
        """Test that the norm 0 shell holds only 0."""
        shell = enumerate_shell(0)
        assert shell.count == 1
        assert shell.elements[0].is_zero()

    def test_enumeration_matches_prefetch(self, shell_store: ShellStore) -> None:
        """Test that direct enumeration and the prefetch pass agree bit for bit."""
        assert enumerate_shell(2).same_as(shell_store.get(2))

    def test_units_contain_fano_units(self, shell_store: ShellStore) -> None:
        """Test that +-1 and +-e_n are units of the order."""
        units = set(shell_store.get(1).elements)
        for x in (ONE, *(Octonion.unit(n) for n in range(7))):
            assert x in units
            assert -x in units

    def test_units_are_closed(self, shell_store: ShellStore) -> None:
        """Test that products of units are units."""
        units = shell_store.get(1).elements
        unit_set = set(units)
        assert all(units[i] * units[j] in unit_set for i in range(0, 240, 17) for j in range(0, 240, 13))

    def test_negative_norm_rejected(self) -> None:
        """Test that a negative norm raises InvalidInputError."""
        with pytest.raises(InvalidInputError, match="non-negative"):
            enumerate_shell(-1)

    def test_norm_above_bound(self) -> None:
        """Test that a norm above the configured bound raises ResourceLimitError."""
        with pytest.raises(ResourceLimitError, match="exceeds"):
            enumerate_shell(5, max_norm=4)
        with pytest.raises(ResourceLimitError):
            ShellStore(max_norm=2).get(3)

    def test_store_memoises(self) -> None:
        """Test that a store returns the same shell object twice."""
        store = ShellStore(max_norm=2)
        assert 1 not in store
        first = store.get(1)
        assert 1 in store
        assert store.get(1) is first

    def test_shell_vectors_are_read_only(self, shell_store: ShellStore) -> None:
        """Test that cached shell arrays cannot be modified in place."""
        vectors = shell_store.vectors(1)
        with pytest.raises(ValueError):
            vectors[0, 0] = 7
        assert isinstance(vectors, np.ndarray)


@pytest.mark.unit
class TestSublattices:
    """Tests for the quaternion suborders and the D6 roots."""

    @pytest.mark.parametrize("line", FANO_LINES, ids=[f"line_{n}" for n in range(7)])
    def test_quaternion_suborder(self, shell_store: ShellStore, line: tuple[int, int, int]) -> None:
        """Test that every line gives a closed group of units containing the Lipschitz units."""
        units = quaternion_suborder_units(line, shell_store)
        unit_set = set(units)
        assert len(units) in (8, TEST_HURWITZ_UNIT_COUNT)
        assert ONE in unit_set
        assert all(Octonion.unit(n) in unit_set for n in line)
        assert all(x * y in unit_set for x in units for y in units)

    def test_non_line_rejected(self, shell_store: ShellStore) -> None:
        """Test that a triple that is not a line raises InvalidInputError."""
        with pytest.raises(InvalidInputError, match="not a Fano line"):
            quaternion_suborder_units((0, 1, 2), shell_store)

    def test_d6_roots(self, shell_store: ShellStore) -> None:
        """Test that 60 units are orthogonal to 1 and e0."""
        roots = d6_roots(shell_store)
        assert len(roots) == TEST_D6_ROOT_COUNT
        assert all(x.trace() == 0 for x in roots)
