"""Binary quadratic forms, narrow class groups and quadratic rings.

Classes:
    - BinaryQuadraticForm: a x^2 + b xy + c y^2 with integer coefficients
    - NarrowClass: sign of definiteness plus reduced positive definite form
    - QuadraticRingKind: the three cases of the quadratic ring of discriminant D
    - QuadraticRing: R(D) with its kind and norm form

Sign convention for negative definite forms:
    A negative definite Q = (a, b, c) is sent to the positive form (-a, b, -c).
    That is the form attached to the same ideal with a positively oriented
    basis, so the map Q -> (sign, form) is a homomorphism onto {+1, -1} x Cl(D)
    and the three classes of a projective cube multiply to (+1, principal).

Composition follows the "Explaining composition" solution of the united-form
linear system (no NUCOMP; discriminants here are small).

Reference: D. Shanks, "Class number, a theory of factorization, and genera" (1971)
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from typing import Self

from sympy.core.intfunc import igcdex

from ..exceptions import InvalidInputError

# =============================================================================
# Helper functions
# =============================================================================


def _solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int]:
    """Solve a x = b (mod m); all solutions are x = u + v * n.

    Raises:
        ValueError: If the congruence has no solution
    """
    x, _, g = (int(value) for value in igcdex(a, m))
    if b % g:
        raise ValueError(f"{a} x = {b} has no solution modulo {m}")
    u = (b // g) * x % m
    v = m // g
    return u, v


def is_discriminant(disc: int) -> bool:
    return disc % 4 in (0, 1)


def _check_discriminant(disc: int) -> None:
    if not is_discriminant(disc):
        raise InvalidInputError(f"{disc} is not a discriminant (must be 0 or 1 mod 4)")


# =============================================================================
# Binary quadratic forms
# =============================================================================


@dataclass(frozen=True, slots=True)
class BinaryQuadraticForm:
    """The form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def is_positive_definite(self) -> bool:
        return self.discriminant < 0 and self.a > 0

    def is_negative_definite(self) -> bool:
        return self.discriminant < 0 and self.a < 0

    def inverse(self) -> BinaryQuadraticForm:
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def transform(self, matrix: tuple[tuple[int, int], tuple[int, int]]) -> BinaryQuadraticForm:
        """Substitute (x, y) -> (p x + q y, r x + s y) for matrix ((p, q), (r, s))."""
        (p, q), (r, s) = matrix
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def normalized(self) -> BinaryQuadraticForm:
        """Translate so that -a < b <= a (positive definite forms)."""
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return BinaryQuadraticForm(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> BinaryQuadraticForm:
        """The reduced form equivalent to a positive definite form."""
        a, b, c = self.normalized()
        while a > c or (a == c and b < 0):
            s = (c + b) // (c + c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return BinaryQuadraticForm(a, b, c).normalized()

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if abs(b) == a or a == c:
            return b >= 0
        return True

    @classmethod
    def principal(cls, disc: int) -> Self:
        """The principal form (1, k, (k^2 - D) / 4) with k = D mod 2."""
        _check_discriminant(disc)
        k = disc % 2
        return cls(1, k, (k * k - disc) // 4)


@dataclass(frozen=True, slots=True)
class NarrowClass:
    """A narrow class for D < 0: definiteness sign times an ordinary class."""

    sign: int
    form: BinaryQuadraticForm

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise InvalidInputError(f"narrow class sign must be +1 or -1, got {self.sign}")

    @property
    def discriminant(self) -> int:
        return self.form.discriminant

    def __mul__(self, other: NarrowClass) -> NarrowClass:
        return NarrowClass(self.sign * other.sign, compose(self.form, other.form))

    def is_identity(self) -> bool:
        return self.sign == 1 and self.form == BinaryQuadraticForm.principal(self.discriminant)


# =============================================================================
# Reduction, composition and class groups
# =============================================================================


def bqf_reduce(form: BinaryQuadraticForm) -> NarrowClass:
    """Narrow class of a primitive definite form.

    Raises:
        InvalidInputError: If the form is indefinite, degenerate or imprimitive
    """
    if form.discriminant >= 0:
        raise InvalidInputError(f"{tuple(form)} is not definite (discriminant {form.discriminant})")
    if not form.is_primitive():
        raise InvalidInputError(f"{tuple(form)} is not primitive")
    if form.a > 0:
        return NarrowClass(1, form.reduced())
    return NarrowClass(-1, BinaryQuadraticForm(-form.a, form.b, -form.c).reduced())


def compose(first: BinaryQuadraticForm, second: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Reduced Gauss composite of two primitive positive definite forms.

    Raises:
        InvalidInputError: If the discriminants differ or a form is not
            primitive positive definite
    """
    if first.discriminant != second.discriminant:
        raise InvalidInputError(f"discriminants differ: {first.discriminant} != {second.discriminant}")
    for form in (first, second):
        if not (form.is_positive_definite() and form.is_primitive()):
            raise InvalidInputError(f"{tuple(form)} is not primitive positive definite")

    a1, b1, c1 = first.reduced()
    a2, b2, _ = second.reduced()

    g = (b2 + b1) // 2
    h = (b2 - b1) // 2
    w = math.gcd(a1, a2, g)

    j = w
    s = a1 // w
    t = a2 // w
    u = g // w

    # k t - ell s = h,  k u - m s = c2,  ell u - m t = c1
    k_base, k_step = _solve_linear_congruence(t * u, h * u + s * c1, s * t)
    n, _ = _solve_linear_congruence(t * k_step, h - t * k_base, s)
    k = k_base + k_step * n
    ell = (t * k - h) // s
    m = (t * u * k - h * u - s * c1) // (s * t)
    assert m * s * t == t * u * k - h * u - s * c1, "composition system has no integral solution"

    composite = BinaryQuadraticForm(s * t, j * u - (k * t + ell * s), k * ell - j * m)
    assert composite.discriminant == first.discriminant
    return composite.reduced()


def reduced_forms(disc: int) -> tuple[BinaryQuadraticForm, ...]:
    """All reduced primitive positive definite forms of a negative discriminant, sorted by (a, b)."""
    if disc >= 0:
        raise InvalidInputError(f"discriminant must be negative, got {disc}")
    _check_discriminant(disc)
    forms = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            numerator = b * b - disc
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            form = BinaryQuadraticForm(a, b, c)
            if form.is_reduced() and form.is_primitive():
                forms.append(form)
        a += 1
    return tuple(forms)


def class_group(disc: int) -> tuple[NarrowClass, ...]:
    """All narrow classes of a negative discriminant: signs +1 then -1, each over Cl(D).

    Raises:
        InvalidInputError: If disc is not a negative discriminant
    """
    forms = reduced_forms(disc)
    return tuple(NarrowClass(sign, form) for sign in (1, -1) for form in forms)


def class_number(disc: int) -> int:
    return len(reduced_forms(disc))


def narrow_product(classes: tuple[NarrowClass, ...]) -> NarrowClass:
    """Product of narrow classes of one discriminant."""
    if not classes:
        raise InvalidInputError("empty product of narrow classes")
    result = classes[0]
    for item in classes[1:]:
        result = result * item
    return result


# =============================================================================
# Quadratic rings
# =============================================================================


class QuadraticRingKind(StrEnum):
    """The three cases of the quadratic ring of discriminant D."""

    DUAL_NUMBERS = "dual-numbers"  # Z[x]/(x^2), D = 0
    SPLIT = "split"  # Z x Z, D a non-zero square
    DOMAIN = "domain"  # Z[(D + sqrt D)/2], otherwise


@dataclass(frozen=True, slots=True)
class QuadraticRing:
    """The quadratic ring R(D) = Z[tau], tau^2 = D tau - (D^2 - D)/4."""

    disc: int
    kind: QuadraticRingKind

    def norm_form(self) -> BinaryQuadraticForm:
        """N(x + y tau) = x^2 + D xy + (D^2 - D)/4 y^2."""
        return BinaryQuadraticForm(1, self.disc, (self.disc * self.disc - self.disc) // 4)


def quad_ring(disc: int) -> QuadraticRing:
    """The quadratic ring of discriminant D.

    Raises:
        InvalidInputError: If D is 2 or 3 mod 4
    """
    _check_discriminant(disc)
    if disc == 0:
        kind = QuadraticRingKind.DUAL_NUMBERS
    elif disc > 0 and math.isqrt(disc) ** 2 == disc:
        kind = QuadraticRingKind.SPLIT
    else:
        kind = QuadraticRingKind.DOMAIN
    return QuadraticRing(disc, kind)
