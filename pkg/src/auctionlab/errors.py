"""Exception and warning types shared across the package."""


class AuctionLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(AuctionLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InsufficientDataError(AuctionLabError):
    """Too few (or degenerate) observations to carry out an estimate."""


class SolverError(AuctionLabError):
    """Numerical failure while solving an equilibrium bid function.

    Carries the index of the offending grid node when one can be identified.
    """

    def __init__(self, message, node_index=None):
        super().__init__(message)
        self.node_index = node_index


class ConfigMismatchError(AuctionLabError):
    """Two objects that must share a configuration do not."""


class IngestError(AuctionLabError):
    """A transaction file is unreadable or structurally malformed."""


class CalibrationError(AuctionLabError):
    """Bidder-count calibration could not produce an estimate."""


class BidUnderflowWarning(UserWarning):
    """A bid was reported as 0 because the win probability underflows.

    Emitted for valuations so deep in the left tail that F(v)^(n-1) is not
    machine-representable; such bidders never win and contribute nothing
    to revenue.
    """
