"""Shared exception types for structured failure reporting."""


class CoposolveError(Exception):
    """Base class for all library errors."""


class DimensionError(CoposolveError):
    """Inputs whose shapes or lengths do not match."""


class ParameterError(CoposolveError):
    """A scalar or configuration parameter is outside its admissible range."""


class CapacityError(CoposolveError):
    """The requested problem size exceeds the supported enumeration limits."""


class PreconditionError(CoposolveError):
    """A documented mathematical precondition of an operation is violated."""


class NotApplicableError(PreconditionError):
    """An operation requiring a structural hypothesis was called without it.

    ``reason`` names the violated hypothesis so callers can branch on it.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class InternalConsistencyError(CoposolveError):
    """Two redundant computations of the same quantity disagreed."""
