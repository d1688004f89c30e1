"""Exception types shared across the library."""


class EvposError(Exception):
    """Base class for all library errors."""


class InvalidInput(EvposError):
    """Malformed or non-finite input data."""


class InvalidGrid(EvposError):
    """A grid violates a structural requirement (parity, alignment, size)."""


class InvalidParameters(EvposError):
    """Model parameters violate an admissibility constraint."""


class NumericalFailure(EvposError):
    """A numerical routine did not reach its accuracy contract."""


class SpectralValueHit(EvposError):
    """A requested shift sits too close to the spectrum.

    Carries the nearest eigenvalue so callers can reroute their schedule.
    """

    def __init__(self, message, nearest=None):
        super().__init__(message)
        self.nearest = nearest


class SeriesDiverges(EvposError):
    """A series expansion was requested outside its disc of convergence."""


class NotAnEigenvalue(EvposError):
    """The given value does not match any eigenvalue cluster."""


class ContourHitsSpectrum(EvposError):
    """An integration contour passes too close to an eigenvalue."""


class NoConvergence(EvposError):
    """An iteration diverged; carries the partial trace for diagnostics."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class PreconditionFailed(EvposError):
    """A documented precondition of an operation does not hold."""


class TailTooLarge(EvposError):
    """A truncated integral's tail bound exceeds the accuracy target."""
