"""Exception types raised across the package."""


class BISError(Exception):
    """Base class for every error raised by bisfptas."""


class GraphError(BISError, ValueError):
    pass


class IndexOutOfRange(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class RemovedVertex(GraphError):
    pass


class SideMismatch(GraphError):
    pass


class TooLarge(BISError):
    """The exact oracle was asked to enumerate more vertices than its cap."""


class DegreeTooLarge(BISError):
    """Both sides have maximum degree above 5, outside the guaranteed regime."""


class NodeBudgetExceeded(BISError):
    """The predicted recursion size is above the configured abort threshold."""


class InvalidEpsilon(BISError, ValueError):
    pass


class InvalidParams(BISError, ValueError):
    pass


class DomainError(BISError, ValueError):
    pass


class ParseError(BISError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VerificationFailure(BISError):
    """A numerical check of the decay analysis failed.

    ``claim`` names the violated check and ``witness`` holds the offending
    point (or ``None`` when the failure is not pointwise).
    """

    def __init__(self, claim, witness=None, message=""):
        self.claim = claim
        self.witness = witness
        super().__init__(f"{claim} failed at {witness!r}: {message}")
