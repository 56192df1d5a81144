"""Unit tests for the E8 root system and the W(E8)-invariant harmonic polynomials."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from src.d4mod.arithmetic.weyl import (
    FUNDAMENTAL_DEGREES,
    InvariantRep,
    RootSystem,
    SkewInvariant,
    default_root_system,
    generic_point,
    harmonic_project,
    invariant_eval,
    laplacian_check,
    laplacian_coefficients,
    power_sum_eval,
    reflect,
    skew_eval,
)
from src.d4mod.exceptions import InvalidInputError

# =============================================================================
# Test Constants - Duplicated from src for test isolation
# =============================================================================

TEST_ROOT_COUNT = 240
TEST_POSITIVE_ROOT_COUNT = 120
TEST_MAX_DEGREE = 30

# sum over roots of <r, x>^2 = 60 <x, x>
TEST_P2_FACTOR = 60

# Degrees with and without a harmonic invariant
TEST_VANISHING_DEGREES = (2, 4, 6, 10)
TEST_NONZERO_DEGREES = (8, 12, 14, 18, 20, 24, 30)

TEST_POINT_COUNT = 20
TEST_GRID_POINTS = 10
TEST_ROOT_SAMPLE = 20

# =============================================================================
# Helper Functions
# =============================================================================


def _random_point(rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(8))


@pytest.fixture(scope="module")
def system() -> RootSystem:
    """The root system, built once per module."""
    return default_root_system()


# =============================================================================
# Root System Tests
# =============================================================================


@pytest.mark.unit
class TestRootSystem:
    """Tests for RootSystem."""

    def test_counts(self, system: RootSystem) -> None:
        """Test 240 roots and 120 positive roots."""
        assert len(system.roots) == TEST_ROOT_COUNT
        assert len(system.positive_roots) == TEST_POSITIVE_ROOT_COUNT
        assert all(tuple(-v for v in r) not in system.positive_roots for r in system.positive_roots)

    def test_roots_have_length_two(self, system: RootSystem) -> None:
        """Test <r, r> = 2 for every root."""
        assert all(system.pairing(r, r) == 2 for r in system.roots)

    def test_reflection(self, system: RootSystem, rng: random.Random) -> None:
        """Test s_r(r) = -r, s_r^2 = 1 and that s_r preserves <x, x>."""
        root = system.roots[17]
        assert reflect(root, root) == tuple(Fraction(-v) for v in root)
        x = _random_point(rng)
        image = system.reflect(root, x)
        assert system.reflect(root, image) == x
        assert system.pairing(image, image) == system.pairing(x, x)

    def test_reflection_permutes_roots(self, system: RootSystem) -> None:
        """Test that a reflection maps roots to roots."""
        root = system.roots[3]
        assert all(system.is_root(system.reflect(root, r)) for r in system.roots)

    def test_non_root_rejected(self, system: RootSystem) -> None:
        """Test that reflecting in a non-root raises InvalidInputError."""
        with pytest.raises(InvalidInputError, match="not a root"):
            system.reflect((2, 0, 0, 0, 0, 0, 0, 0), (0,) * 8)

    def test_is_root(self, system: RootSystem) -> None:
        """Test membership including non-integral vectors."""
        assert system.is_root(system.roots[0])
        assert not system.is_root((0,) * 8)
        assert not system.is_root((Fraction(1, 2),) + (0,) * 7)

    def test_generic_point(self, system: RootSystem) -> None:
        """Test that the generic point is off every reflection hyperplane."""
        numerators, _ = system.root_pairings(generic_point())
        assert all(value != 0 for value in numerators)

    def test_point_length(self, system: RootSystem) -> None:
        """Test that a point needs 8 coordinates."""
        with pytest.raises(InvalidInputError, match="8 coordinates"):
            system.root_pairings((1, 2, 3))


# =============================================================================
# Power Sum Tests
# =============================================================================


@pytest.mark.unit
class TestPowerSums:
    """Tests for power_sum_eval."""

    def test_odd_degree_vanishes(self, rng: random.Random) -> None:
        """Test P_d = 0 for odd d."""
        assert power_sum_eval(3, _random_point(rng)) == 0

    def test_degree_two(self, system: RootSystem, rng: random.Random) -> None:
        """Test P_2(x) = 60 <x, x>."""
        for _ in range(5):
            x = _random_point(rng)
            assert power_sum_eval(2, x, system) == TEST_P2_FACTOR * system.pairing(x, x)

    def test_degree_zero(self, rng: random.Random) -> None:
        """Test P_0 = 240."""
        assert power_sum_eval(0, _random_point(rng)) == TEST_ROOT_COUNT

    def test_negative_degree(self) -> None:
        """Test that a negative degree raises InvalidInputError."""
        with pytest.raises(InvalidInputError):
            power_sum_eval(-2, (0,) * 8)


# =============================================================================
# Harmonic Invariant Tests
# =============================================================================


@pytest.mark.unit
class TestHarmonicInvariants:
    """Tests for harmonic_project, laplacian_check and invariant_eval."""

    def test_degree_two_coefficients(self) -> None:
        """Test h_2 = P_2 - r^2 P_0 / 4."""
        assert harmonic_project(2).coeffs == (Fraction(1), Fraction(-1, 4))

    @pytest.mark.parametrize("degree", range(2, TEST_MAX_DEGREE + 1, 2), ids=lambda d: f"d{d}")
    def test_harmonic(self, degree: int) -> None:
        """Test that every projected invariant has zero Laplacian."""
        rep = harmonic_project(degree)
        assert laplacian_check(rep)
        assert len(rep.coeffs) == degree // 2 + 1
        assert rep.coeffs[0] == 1

    def test_power_sum_not_harmonic(self) -> None:
        """Test that the raw P_8 fails the Laplacian check."""
        rep = InvariantRep.power_sum(8)
        assert not laplacian_check(rep)
        assert laplacian_coefficients(rep)[0] == 2 * 8 * 7

    @pytest.mark.parametrize("degree", [2, 4, 6], ids=["d2", "d4", "d6"])
    def test_low_degrees_vanish(self, system: RootSystem, rng: random.Random, degree: int) -> None:
        """Test that there are no harmonic invariants of degree 2, 4 or 6."""
        rep = harmonic_project(degree)
        for _ in range(4):
            assert invariant_eval(rep, _random_point(rng), system) == 0

    def test_degree_eight_is_nonzero(self, system: RootSystem, rng: random.Random) -> None:
        """Test that h_8 is not identically zero."""
        rep = harmonic_project(8)
        assert any(invariant_eval(rep, _random_point(rng), system) != 0 for _ in range(6))

    @pytest.mark.parametrize("degree", TEST_VANISHING_DEGREES, ids=lambda d: f"d{d}")
    def test_vanishing_degrees(self, system: RootSystem, rng: random.Random, degree: int) -> None:
        """Test that h_d is zero at random points when there is no harmonic invariant of degree d."""
        rep = harmonic_project(degree)
        for _ in range(TEST_POINT_COUNT):
            assert invariant_eval(rep, _random_point(rng), system) == 0

    @pytest.mark.parametrize("degree", TEST_NONZERO_DEGREES, ids=lambda d: f"d{d}")
    def test_nonzero_degrees(self, system: RootSystem, rng: random.Random, degree: int) -> None:
        """Test that h_d is not identically zero in the degrees that carry an invariant."""
        rep = harmonic_project(degree)
        assert laplacian_check(rep)
        assert any(invariant_eval(rep, _random_point(rng), system) != 0 for _ in range(TEST_POINT_COUNT))

    @pytest.mark.slow
    @pytest.mark.parametrize("degree", TEST_NONZERO_DEGREES, ids=lambda d: f"d{d}")
    def test_reflection_invariance_grid(self, system: RootSystem, rng: random.Random, degree: int) -> None:
        """Test h(s_r x) = h(x) for every pair of sampled points and roots."""
        rep = harmonic_project(degree)
        roots = rng.sample(system.roots, TEST_ROOT_SAMPLE)
        for _ in range(TEST_GRID_POINTS):
            x = _random_point(rng)
            value = invariant_eval(rep, x, system)
            for root in roots:
                assert invariant_eval(rep, system.reflect(root, x), system) == value

    @pytest.mark.parametrize("degree", [d for d in FUNDAMENTAL_DEGREES if d > 2], ids=lambda d: f"d{d}")
    def test_reflection_invariance(self, system: RootSystem, rng: random.Random, degree: int) -> None:
        """Test h(s_r x) = h(x) for random roots and points."""
        rep = harmonic_project(degree)
        for _ in range(3):
            x = _random_point(rng)
            root = rng.choice(system.roots)
            assert invariant_eval(rep, system.reflect(root, x), system) == invariant_eval(rep, x, system)

    def test_homogeneous(self, system: RootSystem, rng: random.Random) -> None:
        """Test h(t x) = t^d h(x)."""
        rep = harmonic_project(8)
        x = _random_point(rng)
        scaled = tuple(3 * v for v in x)
        assert invariant_eval(rep, scaled, system) == 3**8 * invariant_eval(rep, x, system)

    @pytest.mark.parametrize("degree", [0, 7, 32], ids=["zero", "odd", "too_large"])
    def test_degree_rejected(self, degree: int) -> None:
        """Test that odd or out-of-range degrees raise InvalidInputError."""
        with pytest.raises(InvalidInputError, match="degree"):
            harmonic_project(degree)

    @pytest.mark.parametrize(
        ("degree", "coeffs", "message"),
        [
            (3, (Fraction(1), Fraction(0)), "even"),
            (4, (Fraction(1), Fraction(0)), "coefficients"),
            (2, (Fraction(2), Fraction(0)), "leading"),
        ],
        ids=["odd", "wrong_length", "leading"],
    )
    def test_rep_validation(self, degree: int, coeffs: tuple[Fraction, ...], message: str) -> None:
        """Test InvariantRep validation."""
        with pytest.raises(InvalidInputError, match=message):
            InvariantRep(degree=degree, coeffs=coeffs)

    def test_to_json(self) -> None:
        """Test that coefficients serialize as exact strings."""
        assert harmonic_project(2).to_json() == {"degree": 2, "coeffs": ["1", "-1/4"]}


# =============================================================================
# Skew Invariant Tests
# =============================================================================


@pytest.mark.unit
class TestSkewInvariant:
    """Tests for the product over positive roots."""

    def test_degree(self, system: RootSystem) -> None:
        """Test that the skew invariant has degree 120."""
        skew = SkewInvariant(system)
        assert skew.degree == TEST_POSITIVE_ROOT_COUNT
        assert len(skew.factors) == TEST_POSITIVE_ROOT_COUNT

    def test_nonzero_at_generic_point(self, system: RootSystem) -> None:
        """Test that the generic point is not a zero."""
        assert skew_eval(generic_point(), system) != 0

    def test_vanishes_on_hyperplane(self, system: RootSystem) -> None:
        """Test that a point orthogonal to a root is a zero."""
        assert skew_eval((0,) * 8, system) == 0

    def test_alternating(self, system: RootSystem, rng: random.Random) -> None:
        """Test skew(s_r x) = -skew(x)."""
        x = generic_point()
        value = skew_eval(x, system)
        for _ in range(3):
            root = rng.choice(system.roots)
            assert skew_eval(system.reflect(root, x), system) == -value

    def test_alternating_on_random_points(self, system: RootSystem, rng: random.Random) -> None:
        """Test skew(s_r x) = -skew(x) for sampled roots and random points."""
        for root in rng.sample(system.roots, TEST_ROOT_SAMPLE):
            x = _random_point(rng)
            assert skew_eval(system.reflect(root, x), system) == -skew_eval(x, system)

    def test_vanishes_on_random_hyperplane_points(self, system: RootSystem, rng: random.Random) -> None:
        """Test that non-zero points with <r, x> = 0 are zeros."""
        for _ in range(TEST_GRID_POINTS):
            root = rng.choice(system.roots)
            x = _random_point(rng)
            t = system.pairing(root, x) / system.pairing(root, root)
            point = tuple(v - t * r for v, r in zip(x, root, strict=True))
            assert any(point)
            assert system.pairing(root, point) == 0
            assert skew_eval(point, system) == 0

    def test_product_with_invariant_alternates(self, system: RootSystem, rng: random.Random) -> None:
        """Test that h_8 times the skew invariant changes sign under a reflection."""
        rep = harmonic_project(8)
        for _ in range(3):
            x = _random_point(rng)
            root = rng.choice(system.roots)
            image = system.reflect(root, x)
            product = invariant_eval(rep, x, system) * skew_eval(x, system)
            assert invariant_eval(rep, image, system) * skew_eval(image, system) == -product
