"""The exceptional Jordan algebra J3 over Coxeter's order, and the Freudenthal space.

An element A = (a, b, c; alpha, beta, gamma) is the Hermitian matrix

    [[ a,            gamma,        conj(beta) ],
     [ conj(gamma),  b,            alpha      ],
     [ beta,         conj(alpha),  c          ]]

so alpha sits at (2, 3), beta at (3, 1) and gamma at (1, 2). With this layout

    Det(A) = abc + Tr(alpha beta gamma) - a N(alpha) - b N(beta) - c N(gamma)

and the adjoint A# has diagonal (bc - N(alpha), ca - N(beta), ab - N(gamma))
and off-diagonals

    alpha# = conj(beta gamma) - a alpha
    beta#  = conj(gamma alpha) - b beta
    gamma# = conj(alpha beta) - c gamma

These satisfy (A#)# = Det(A) A. The cyclic rotation
(a, b, c; alpha, beta, gamma) -> (b, c, a; beta, gamma, alpha) preserves
Det and commutes with #.

Classes:
    - JordanElement: element of J3 with integral diagonal and octonion entries
    - FreudenthalElement: (x, A+, A-, y) in the rank 56 lattice

Reference: T. A. Springer, F. D. Veldkamp, "Octonions, Jordan Algebras and
Exceptional Groups" (2000), ch. 5
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Self

from ..exceptions import InvalidInputError
from .common import gcd_all
from .cubes import Cube
from .octonion import ZERO, Octonion, oct_trilinear


@dataclass(frozen=True, kw_only=True, slots=True)
class JordanElement:
    """The Hermitian 3x3 matrix (a, b, c; alpha, beta, gamma)."""

    a: int = 0
    b: int = 0
    c: int = 0
    alpha: Octonion = field(default=ZERO)
    beta: Octonion = field(default=ZERO)
    gamma: Octonion = field(default=ZERO)

    @classmethod
    def diagonal(cls, a: int, b: int, c: int) -> Self:
        return cls(a=a, b=b, c=c)

    @classmethod
    def off_diagonal(cls, alpha: Octonion, beta: Octonion, gamma: Octonion) -> Self:
        return cls(alpha=alpha, beta=beta, gamma=gamma)

    # -------------------------------------------------------------------------
    # Cubic structure
    # -------------------------------------------------------------------------

    def det(self) -> int:
        return (
            self.a * self.b * self.c
            + oct_trilinear(self.alpha, self.beta, self.gamma)
            - self.a * self.alpha.norm()
            - self.b * self.beta.norm()
            - self.c * self.gamma.norm()
        )

    def sharp(self) -> JordanElement:
        a, b, c = self.a, self.b, self.c
        alpha, beta, gamma = self.alpha, self.beta, self.gamma
        return JordanElement(
            a=b * c - alpha.norm(),
            b=c * a - beta.norm(),
            c=a * b - gamma.norm(),
            alpha=(beta * gamma).conj() - a * alpha,
            beta=(gamma * alpha).conj() - b * beta,
            gamma=(alpha * beta).conj() - c * gamma,
        )

    def trace(self) -> int:
        return self.a + self.b + self.c

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c) and all(x.is_zero() for x in (self.alpha, self.beta, self.gamma))

    def rank(self) -> int:
        """0 for A = 0, 1 when A# = 0, 3 when Det(A) != 0, otherwise 2."""
        if self.is_zero():
            return 0
        if self.sharp().is_zero():
            return 1
        if self.det() != 0:
            return 3
        return 2

    def content(self) -> int:
        """Largest integer d with A / d integral.

        Raises:
            InvalidInputError: If A = 0
        """
        if self.is_zero():
            raise InvalidInputError("the zero element has no content")
        return gcd_all((self.a, self.b, self.c, *self.alpha.coords, *self.beta.coords, *self.gamma.coords))

    def is_psd_rank1(self) -> bool:
        # A rank one element has a, b, c of one sign, so the diagonal decides
        return self.a >= 0 and self.b >= 0 and self.c >= 0 and self.rank() == 1

    # -------------------------------------------------------------------------
    # Linear structure
    # -------------------------------------------------------------------------

    def scale(self, factor: int) -> JordanElement:
        return JordanElement(
            a=factor * self.a,
            b=factor * self.b,
            c=factor * self.c,
            alpha=factor * self.alpha,
            beta=factor * self.beta,
            gamma=factor * self.gamma,
        )

    def rotate(self, steps: int = 1) -> JordanElement:
        """Apply the cyclic automorphism (a, b, c; alpha, beta, gamma) -> (b, c, a; beta, gamma, alpha)."""
        result = self
        for _ in range(steps % 3):
            result = JordanElement(
                a=result.b, b=result.c, c=result.a, alpha=result.beta, beta=result.gamma, gamma=result.alpha
            )
        return result

    def to_json(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "alpha": list(self.alpha.coords),
            "beta": list(self.beta.coords),
            "gamma": list(self.gamma.coords),
        }


def jordan_det(element: JordanElement) -> int:
    return element.det()


def jordan_sharp(element: JordanElement) -> JordanElement:
    return element.sharp()


def jordan_rank(element: JordanElement) -> int:
    return element.rank()


def content(element: JordanElement | FreudenthalElement) -> int:
    return element.content()


def is_psd_rank1(element: JordanElement) -> bool:
    return element.is_psd_rank1()


# =============================================================================
# Freudenthal space
# =============================================================================


@dataclass(frozen=True, kw_only=True, slots=True)
class FreudenthalElement:
    """The 2x2 matrix [[x, A+], [A-, y]] with x, y integers and A+, A- in J3."""

    x: int
    a_plus: JordanElement
    a_minus: JordanElement
    y: int

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.a_plus.is_zero() and self.a_minus.is_zero()

    def content(self) -> int:
        """Largest integer d with phi / d integral.

        Raises:
            InvalidInputError: If phi = 0
        """
        if self.is_zero():
            raise InvalidInputError("the zero element has no content")
        parts = [self.x, self.y]
        for element in (self.a_plus, self.a_minus):
            if not element.is_zero():
                parts.append(element.content())
        return gcd_all(parts)

    def to_json(self) -> dict[str, Any]:
        return {"x": self.x, "a_plus": self.a_plus.to_json(), "a_minus": self.a_minus.to_json(), "y": self.y}


def omega_element(x: int, element: JordanElement) -> FreudenthalElement:
    """x * [[1, A], [A#, Det(A)]].

    Raises:
        InvalidInputError: If x = 0
    """
    if x == 0:
        raise InvalidInputError("omega_element needs a non-zero scalar")
    return FreudenthalElement(
        x=x,
        a_plus=element.scale(x),
        a_minus=element.sharp().scale(x),
        y=x * element.det(),
    )


def restrict_to_cube(phi: FreudenthalElement) -> Cube:
    """The 2x2x2 cube read off the diagonal part of phi.

    c000 = x, (c100, c010, c001) = diag A+, (c011, c101, c110) = diag A-,
    c111 = y. For A with zero diagonal, omega_element(1, A) restricts to the
    normal cube e = -N(alpha), f = -N(beta), g = -N(gamma), m = Tr(alpha beta gamma).
    """
    plus, minus = phi.a_plus, phi.a_minus
    return Cube((phi.x, plus.c, plus.b, minus.a, plus.a, minus.b, minus.c, phi.y))
