"""Exception types raised across the package."""

from __future__ import annotations


class TBError(Exception):
    """Base class for all package errors."""


class DimensionError(TBError, ValueError):
    pass


class DegenerateBasisError(TBError, ValueError):
    """A matrix that must have full row rank does not."""


class ParseError(TBError, ValueError):
    pass


class DegenerateColumnError(TBError, ValueError):
    pass


class NonDivisibleError(TBError, ValueError):
    pass


class SectionLengthError(TBError, ValueError):
    """The number of sections N is too small for the requested operation."""


class InvalidEncoderError(TBError, ValueError):
    pass


class NonCanonicalError(TBError, ValueError):
    pass


class DegenerateTailBitingError(TBError, ValueError):
    """The tail-biting generator matrix has rank below k0*N."""


class NotShiftStructuredError(TBError, ValueError):
    pass


class SelectionError(TBError, ValueError):
    pass


class FullSupportError(TBError, ValueError):
    """The code has an all-zero coordinate, so characteristic spans are undefined."""


class StructureError(TBError, AssertionError):
    """A structural invariant of the characteristic span list failed."""


class BudgetError(TBError, RuntimeError):
    """Brute-force enumeration would exceed the configured budget."""


class ExhaustedError(TBError, RuntimeError):
    """No reduction candidate produced a smaller constraint length."""


class VerificationError(TBError, RuntimeError):
    """A reduction candidate failed the code-equality check."""
