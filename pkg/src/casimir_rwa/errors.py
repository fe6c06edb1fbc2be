"""Exception types raised across the package."""


class CasimirError(Exception):
    """Base class for all package errors."""


class BadDimension(CasimirError, ValueError):
    pass


class DimensionMismatch(CasimirError, ValueError):
    pass


class DegenerateDecomposition(CasimirError, ArithmeticError):
    """The 22-entry is too small for the Gauss chart to cover the matrix."""


class SingularAlpha(CasimirError, ArithmeticError):
    """|alpha(t)| vanished, so log(alpha) and beta/alpha are undefined."""


class OverflowRisk(CasimirError, OverflowError):
    pass


class NormDrift(CasimirError, RuntimeError):
    """Integration norm left its tolerance band.

    ``trajectory`` holds the records computed up to and including the
    offending one.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
