"""Exception types raised by the numerical routines."""


class CasimirError(Exception):
    """Base class for all package errors."""


class MissedRootSuspicion(CasimirError):
    """Scan-grid sign changes disagree with the asymptotic root count."""

    def __init__(self, found, expected, cutoff):
        self.found = found
        self.expected = expected
        self.cutoff = cutoff
        super().__init__(
            f"found {found} roots below {cutoff:g}, expected about {expected}; "
            "retry with a finer scan step"
        )


class ToleranceNotMet(CasimirError):
    """Adaptive quadrature ran out of subdivisions.

    ``value`` and ``error`` hold the best result reached.
    """

    def __init__(self, value, error, target):
        self.value = value
        self.error = error
        self.target = target
        super().__init__(
            f"error estimate {error:.3e} above target {target:.3e} (best value {value:.12g})"
        )


class SeriesTruncation(CasimirError):
    def __init__(self, value, remainder, tol):
        self.value = value
        self.remainder = remainder
        self.tol = tol
        super().__init__(f"series remainder bound {remainder:.3e} exceeds {tol:.3e}")


class DomainError(CasimirError, ValueError):
    """Argument outside the domain where a formula is valid."""


class Unsupported(CasimirError):
    """Operation not available for the given model."""
