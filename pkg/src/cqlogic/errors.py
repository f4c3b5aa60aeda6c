"""Exception types shared across the package."""


class CqlogicError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CqlogicError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class ValidationError(DomainError):
    """A state table violates one of the measure axioms.

    Carries the violated constraint so callers can report it.
    """

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class FormatError(CqlogicError, ValueError):
    """A QLF/QSF document or a rational literal could not be parsed."""
