"""
Exception hierarchy for the decomposition engine.
All errors derive from ValueError so callers that only expect bad input keep working.
"""

from typing import Optional


class RegulusError(ValueError):
    """Base class for every error raised by the engine."""


class ContextMismatchError(RegulusError):
    """Polynomials or documents belong to different indeterminate contexts."""


class ConstantClassError(RegulusError):
    """A main-variable attribute was requested for a polynomial of class 0."""

    def __init__(self, what: str = "mvar"):
        super().__init__(f"constant-class: {what} is undefined for a polynomial of class 0")


class DegreeError(RegulusError):
    """Pseudo-division or resultant called with a divisor of degree 0."""


class BadPrimeError(RegulusError):
    """The prime divides a coefficient denominator, or is not prime at all."""

    def __init__(self, prime: int, reason: str = "divides a coefficient denominator"):
        self.prime = prime
        super().__init__(f"bad prime {prime}: {reason}")


class EmptySystemError(RegulusError):
    """A system is empty after dropping zero polynomials."""

    def __init__(self, message: str = "empty system"):
        super().__init__(message)


class ChainError(RegulusError):
    """Malformed triangular set or violated recursion invariant."""


class ParseError(RegulusError):
    """Expression or document parse failure with a source position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, token: Optional[str] = None):
        self.line = line
        self.column = column
        self.token = token
        super().__init__(f"line {line}, column {column}: {message}")


class BudgetExceededError(RegulusError):
    """Finite-field enumeration would exceed the point budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} points but the budget is {budget}; "
            f"use a smaller prime or raise the budget to at least {required}"
        )


class SamplingError(RegulusError):
    """No parameter point off V(B) could be sampled."""

    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(f"B vanishes everywhere sampled ({attempts} attempts)")


class UsageError(RegulusError):
    """Invalid command-line usage."""
