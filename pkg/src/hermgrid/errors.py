"""Exception types shared across the package."""


class HermgridError(Exception):
    """Base class for all package-specific errors."""


class OrderTooLargeError(HermgridError, ValueError):
    """Raised when a raw Hermite polynomial order exceeds the stable range."""


class BoxTooSmallError(HermgridError, ValueError):
    """Raised when a difference operator would leave an empty valid region."""


class DomainError(HermgridError, ValueError):
    """Raised when an argument lies outside an operation's mathematical domain."""


class NonconvergenceError(HermgridError, RuntimeError):
    """Raised when two refinement levels of a quadrature disagree beyond tolerance."""


class TruncationWarning(UserWarning):
    """Emitted when a truncated mode sum drops terms above the configured tolerance."""
