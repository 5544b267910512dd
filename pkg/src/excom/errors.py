"""Exception hierarchy shared across the package."""


class ExcomError(Exception):
    """Base class for all errors raised by this package."""


class NotPrimeError(ExcomError):
    """The requested modulus is composite."""


class OutOfRangeError(ExcomError):
    """The requested modulus does not fit the supported range."""


class FieldMismatchError(ExcomError):
    """Operands belong to different prime fields."""


class DivisionByZeroError(ExcomError, ZeroDivisionError):
    """Inversion or division of the zero element."""


class TruncationMismatchError(ExcomError):
    """Series operands have different truncation orders."""


class ZeroPolynomialError(ExcomError):
    """The zero polynomial was passed where a nonzero one is required."""


class ZeroDivisorError(ExcomError):
    """Attempted division by the zero polynomial."""


class BudgetExceededError(ExcomError):
    """An enumeration would exceed its configured work budget."""

    def __init__(self, message: str, needed: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class PrefixTooShortError(ExcomError):
    """The sequence prefix has fewer symbols than the analysis needs."""


class PrerequisiteViolatedError(ExcomError):
    """A documented precondition does not hold for the given arguments."""


class InvalidModulusError(ExcomError):
    """The modulus is unsuitable for the requested generator (p = 2 or composite)."""


class RangeError(ExcomError):
    """A numeric argument is outside its documented range."""


class SequenceFormatError(ExcomError):
    """A sequence file is malformed; carries line/column diagnostics."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PolynomialFormatError(ExcomError):
    """A polynomial expression could not be parsed."""
