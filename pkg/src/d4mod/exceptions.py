"""d4mod exception classes."""

from __future__ import annotations


class D4ModError(Exception):
    """Base exception for all d4mod errors."""


class InvalidInputError(D4ModError, ValueError):
    """Input violates an operation's precondition."""


class ResourceLimitError(D4ModError):
    """A configured resource bound (e.g. maximum shell norm) would be exceeded."""


class ReductionBudgetExceeded(D4ModError):
    """Cube normalization did not find a normal form within its search budget."""


class CacheError(D4ModError):
    """Shell cache file is malformed or belongs to another basis."""


class OrderAxiomError(D4ModError):
    """An order basis failed one of the integral order axioms."""

    def __init__(self, axiom: str, detail: str) -> None:
        super().__init__(f"order axiom '{axiom}' failed: {detail}")
        self.axiom = axiom
        self.detail = detail
