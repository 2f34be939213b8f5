"""Exception types raised across the toolkit."""

from __future__ import annotations


class ArdlkitError(ValueError):
    """Base class for every error the toolkit raises on bad input."""


class DataError(ArdlkitError):
    """Malformed, incomplete or misaligned input data."""


class SampleTooShortError(ArdlkitError):
    """Not enough observations (or residual degrees of freedom) for a procedure."""


class RankDeficiencyError(ArdlkitError):
    """A design matrix is numerically rank deficient."""

    def __init__(self, message: str, columns: tuple[str, ...] = ()) -> None:
        super().__init__(message)
        self.columns = columns


class PerfectFitError(ArdlkitError):
    """Residual sum of squares is exactly zero where a positive value is required."""


class IntegrationOrderError(ArdlkitError):
    """A variable is integrated of order two or higher where that is excluded."""


class NotCointegratedError(ArdlkitError):
    """The bounds test did not support cointegration and the caller did not force."""


class ConfigError(ArdlkitError):
    """Invalid pipeline configuration."""
