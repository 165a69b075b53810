"""Exception hierarchy shared by every bpbkit module."""


class BPBError(Exception):
    """Base class for all bpbkit errors."""


class DimensionMismatch(BPBError, ValueError):
    """Raised when vectors/operators of incompatible lengths are combined."""


class DomainError(BPBError, ValueError):
    """Raised for parameters outside their admissible range (e.g. eps not in (0, 1))."""


class HypothesisNotMet(BPBError):
    """The near-attainment hypothesis of a construction is violated.

    ``deficit`` is how far the realized value falls short of the required
    threshold (positive when the hypothesis fails).
    """

    def __init__(self, msg, deficit=None, required=None, realized=None):
        super().__init__(msg)
        self.deficit = deficit
        self.required = required
        self.realized = realized


class EmptyP(BPBError):
    """The retained index set is empty, so no normalization is possible."""


class NotInPi(BPBError):
    """The given (vector, functional) pair is not a norming pair."""


class NotUnitNorm(BPBError):
    """The operator does not have numerical radius one."""


class InternalInvariant(BPBError):
    """A condition forced by the mathematics failed; indicates corrupted input."""


class ParseError(BPBError, ValueError):
    """An instance or report file could not be decoded."""
