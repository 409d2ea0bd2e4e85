"""Exception hierarchy.

Input problems derive from :class:`InputError` (also a ``ValueError``); broken
internal guarantees raise :class:`InvariantViolation`.
"""


class SepSimplexError(Exception):
    """Base class for all package errors."""


class InputError(SepSimplexError, ValueError):
    """Invalid user-supplied data."""


class DimensionError(InputError):
    pass


class NotHermitianError(InputError):
    pass


class TraceError(InputError):
    pass


class NegativeEigenvalueError(InputError):
    pass


class NormalizationError(InputError):
    pass


class RankError(InputError):
    pass


class DomainError(InputError):
    """A scalar parameter is outside its admissible range."""


class OrthogonalityError(InputError):
    pass


class CompletenessError(InputError):
    pass


class CommutationError(InputError):
    pass


class InvariantViolation(SepSimplexError, RuntimeError):
    """A construction failed its own post-condition check."""


class IterationLimitError(SepSimplexError, RuntimeError):
    pass
