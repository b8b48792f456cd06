from __future__ import annotations

from typing import Any


class IntegrationError(ValueError):
    """Base class for every error raised by the integration library."""


class CoefficientParseError(IntegrationError):
    """Raised when a coefficient list cannot be parsed into exact rationals."""


class DomainViolation(IntegrationError):
    """Raised when an input lies outside the domain an operation accepts."""


class ConvergenceRange(DomainViolation):
    """Raised when a numerator exponent makes the integral divergent."""


OutOfConvergenceRange = ConvergenceRange


class NotSymmetric(DomainViolation):
    """Raised when a palindromic denominator is required but not supplied."""


class NotNormalized(DomainViolation):
    """Raised when a denominator does not have a0 = ap = 1."""


class UnsupportedPower(DomainViolation):
    """Raised for Landen steps on a denominator power above one."""


class HypothesisViolation(DomainViolation):
    """Raised when closed-form parameters leave the region the formula covers."""


class NonPositiveScale(DomainViolation):
    """Raised when the scaled quartic gets b <= 0 or c <= 0."""


class NonPositiveParameters(DomainViolation):
    """Raised when a parameter point has a nonpositive coordinate."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NonConvergentIntegrand(DomainViolation):
    """Raised when the integrand is not integrable on [0, inf)."""


class RangeViolation(DomainViolation):
    """Raised when binomial identity arguments fall outside their range."""


class NegativeBaseFractionalPower(DomainViolation):
    """Raised when a fractional power is taken of a negative value."""

    def __init__(self, subtree: Any):
        super().__init__(f"fractional power of a negative base: {subtree}")
        self.subtree = subtree


class NumericShortfall(IntegrationError):
    """Raised when a numeric procedure stops short of the requested accuracy."""


class PrecisionNotReached(NumericShortfall):
    def __init__(self, estimate: Any, error_estimate: Any, digits: int):
        super().__init__(f"quadrature did not reach {digits} digits (error estimate {error_estimate})")
        self.estimate = estimate
        self.error_estimate = error_estimate
        self.digits = digits


class MaxIterationsReached(NumericShortfall):
    def __init__(self, result: Any):
        super().__init__(f"iteration stopped with status {result.status.value} after {result.iterations} steps")
        self.result = result
