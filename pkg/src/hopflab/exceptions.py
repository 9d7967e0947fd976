"""Exception hierarchy.

Every error carries a CLI exit code so the front end can map failures
without a lookup table of its own.
"""


class HopfLabError(Exception):
    exit_code = 1


class ValidationError(HopfLabError, ValueError):
    """Input could not be parsed or violates a contract."""

    exit_code = 2


class ParseError(ValidationError):
    pass


class ModulusNotGreaterThanOne(ValidationError):
    pass


class MixedModes(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ZeroPoint(ValidationError):
    pass


class EnumerationCapExceeded(ValidationError):
    pass


class NotDescending(ValidationError):
    """The tensor field is not invariant under the deck generator."""


class NotQuasiRegular(ValidationError):
    pass


class PrecisionExhausted(HopfLabError, ArithmeticError):
    """Floating-point evidence cannot separate a relation from a non-relation."""

    exit_code = 3


class NotCertified(HopfLabError):
    """An operation that needs exact data was given floating-point data."""

    exit_code = 3


class FactorizationError(HopfLabError):
    exit_code = 3


class NonConvergence(HopfLabError, ArithmeticError):
    exit_code = 3


class StepTooLarge(HopfLabError, ArithmeticError):
    exit_code = 3


class TheoremViolation(HopfLabError, AssertionError):
    """A check that must hold mathematically came out false: an internal bug."""

    exit_code = 4


class NumericMismatch(TheoremViolation):
    pass
