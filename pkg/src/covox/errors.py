"""Exception types shared across the package."""


class CovoxError(Exception):
    """Base class for all errors raised by covox."""


class DomainError(CovoxError, ValueError):
    """An argument violates a documented precondition."""


class OrderOutOfRange(DomainError):
    """An excitation index lies outside the range where accuracy was verified."""


class InvalidVelocity(DomainError):
    """A velocity ratio with |beta| >= 1 was supplied."""


class ToleranceError(CovoxError, ArithmeticError):
    """A requested numerical tolerance cannot be met with the given resolution."""
