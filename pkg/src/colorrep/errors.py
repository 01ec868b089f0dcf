"""Exception types shared across the package."""


class ColorRepError(Exception):
    """Base class for all library errors."""


class ValidationError(ColorRepError, ValueError):
    """An argument is outside its documented domain."""


class SizeLimitError(ColorRepError):
    """A computation would exceed a hard size guard."""


class SingularParameterError(ColorRepError, ZeroDivisionError):
    """A closed form has a zero denominator at the requested parameters."""


class InconsistentSystemError(ColorRepError):
    """A linear system (without sign constraints) has no solution at all."""


class NotInvariantError(ColorRepError):
    """A measure expected to be permutation invariant is not."""


class NoSecondRepresentationError(ColorRepError):
    """Raised for graphs on fewer than three vertices, whose representation is unique."""
