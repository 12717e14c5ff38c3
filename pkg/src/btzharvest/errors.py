"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BtzHarvestError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BtzHarvestError, ValueError):
    """An input lies outside the physical or mathematical domain of an operation."""


class ConvergenceError(BtzHarvestError, RuntimeError):
    """A truncated sum or adaptive integration failed to reach its tolerance.

    Carries the best available value and the error estimate at the point of
    failure so callers can decide whether to degrade gracefully.
    """

    def __init__(self, message: str, value=None, estimate: float | None = None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class ConsistencyError(BtzHarvestError, RuntimeError):
    """A computed quantity violates a property it must satisfy (e.g. a negative
    transition probability beyond the absolute tolerance)."""


class BracketError(BtzHarvestError, ValueError):
    """A root bracket does not straddle a sign change.

    Carries the objective values at both ends for diagnosis.
    """

    def __init__(self, message: str, f_lo: float | None = None, f_hi: float | None = None):
        super().__init__(message)
        self.f_lo = f_lo
        self.f_hi = f_hi
