"""Error types raised by the harvesting library.

Management commands translate these into process exit codes: accuracy
problems exit with 2, domain and contract violations with 3.
"""

from __future__ import annotations


class HarvestError(Exception):
    """Base class for every error raised by the library."""


class DomainError(HarvestError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ContractError(HarvestError, ValueError):
    """A call contract was violated (bad policy, unbracketed root, ...)."""


class AccuracyError(HarvestError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance.

    ``best_estimate`` and ``abs_err`` carry whatever the routine had when
    it gave up, so callers can decide whether the value is still usable.
    """

    def __init__(self, message: str, best_estimate: complex | float | None = None, abs_err: float | None = None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_err = abs_err


class DegeneracyError(AccuracyError):
    """A principal-value root is (numerically) a double root."""


class NoHarvestingError(DomainError):
    """Concurrence vanishes already at the smallest scanned separation."""


class UnboundedRangeError(DomainError):
    """A bracket search ran past its hard limit without a sign change."""


class ConfigParseError(HarvestError):
    """A run configuration file could not be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
