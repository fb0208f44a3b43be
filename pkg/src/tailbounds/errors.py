"""Typed errors raised by the library and mapped to CLI exit codes."""


class TailBoundsError(Exception):
    """Base class for every error raised by this package."""


class InvalidInterval(TailBoundsError):
    """An interval distance is outside the domain of the query (e.g. v < 0)."""


class InvalidMoment(TailBoundsError):
    """A moment parameter is invalid (e.g. a nonpositive second moment)."""


class InvalidParameter(TailBoundsError):
    """A solver parameter is outside its domain."""


class InvalidClassQuery(TailBoundsError):
    """The query shape is undefined for the distribution class."""


class OutOfTheoremRange(TailBoundsError):
    """No sharp bound is known for this class at these distances."""


class NoWitness(TailBoundsError):
    """The bound is only approached; no attaining distribution exists."""


class OracleInconclusive(TailBoundsError):
    """A search oracle found no feasible candidate on its grid."""


class OracleViolation(TailBoundsError):
    """An oracle exceeded an analytic bound beyond tolerance (formula bug)."""


class InvalidCount(TailBoundsError):
    """A sample or step count is not a positive integer."""


class DataError(TailBoundsError):
    """Malformed input data; ``line`` is the 1-based offending CSV line."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
