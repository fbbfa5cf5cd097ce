"""Exception types raised across the package."""


class BidiscError(Exception):
    """Base class for all package errors."""


class ValidationError(BidiscError, ValueError):
    """Malformed measure, polynomial or configuration input."""


class DomainError(BidiscError, ValueError):
    """Argument outside the open unit disc (or interval) where an operation is defined."""


class SliceNotVanishing(BidiscError):
    """The slice ``f(z_j = lambda)`` is not zero, so ``f`` is not divisible by ``z_j - lambda``."""

    def __init__(self, residual, threshold):
        self.residual = float(residual)
        self.threshold = float(threshold)
        super().__init__(
            f"slice does not vanish: max residual coefficient {self.residual:.3e} "
            f"exceeds {self.threshold:.3e}"
        )


class NotPositiveDefinite(BidiscError):
    """Cholesky factorization of a Gram matrix failed."""


class BasisTooSmall(BidiscError):
    """A polynomial does not fit in the monomial basis it is paired with."""


class WindowEmpty(BidiscError):
    """The truncation window on which an identity is exact contains no basis vectors."""


class RankAmbiguous(BidiscError):
    """A singular value sits too close to the rank threshold for a reliable count."""

    def __init__(self, sigma, threshold):
        self.sigma = float(sigma)
        self.threshold = float(threshold)
        super().__init__(
            f"singular value {self.sigma:.3e} within a factor 10 of threshold {self.threshold:.3e}"
        )


class InconsistentNormalization(BidiscError):
    """Orbit data disagree on the squared norm of the cyclic vector."""
