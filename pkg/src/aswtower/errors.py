"""Exception types shared across the package."""


class AswError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(AswError):
    pass


class ReducibleModulus(AswError):
    pass


class DimensionMismatch(AswError):
    pass


class TwistNotLinearizable(AswError):
    pass


class UnsupportedLength(AswError):
    pass


class NotNormalizable(AswError):
    pass


class LevelExceedsDepth(AswError):
    pass


class GenusCapExceeded(AswError):
    pass


class UnsupportedModel(AswError):
    pass


class BasisNotClosed(AswError):
    """An operator left the span of a basis that it must preserve (bug signal)."""


class ActionNotClosed(AswError):
    pass


class NotUnipotent(AswError):
    pass


class CoverNotEtale(AswError):
    pass


class EnumerationTooLarge(AswError):
    pass


class InconsistentCounts(AswError):
    pass


class InsufficientData(AswError):
    pass


class EmptyIdeal(AswError):
    pass


class DegenerateLeadingTerm(AswError):
    """Valuation of a sum could not be certified beyond first order."""
