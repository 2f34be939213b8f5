"""Time-series econometrics for single-equation emissions-driver models."""

__version__ = "0.1.0"
