"""Real error-function family used by the closed forms.

Only what the closed-form correlation terms need: the complementary error
function on the real line, the Dawson integral, and the bounded
combination ``e^{-x²}·Erfc(ix)`` built from them. Every function accepts a
finite real and raises :class:`DomainError` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import AccuracyError, DomainError

TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)

# Taylor series below this |x|, continued fraction above.
ERFC_SWITCH = 2.0
# Maclaurin series up to this |x|, asymptotic expansion beyond.
DAWSON_SWITCH = 7.0
# Continued-fraction convergence is judged on the ratio of successive
# convergents, which cannot settle below a few ulps.
CF_RELATIVE_TOL = 1e-15


@dataclass(frozen=True)
class SpecFunAccuracy:
    """Stopping rule shared by every series and continued fraction here."""

    target_abs_err: float = 1e-17
    max_terms: int = 500

    def __post_init__(self):
        if self.target_abs_err <= 0:
            raise ValueError("target_abs_err must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


ACCURACY = SpecFunAccuracy()


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    return x


def _erf_series(x: float) -> float:
    """erf(x) = (2/√π) e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!, all terms positive for x > 0."""
    term = x
    total = x
    x2 = 2.0 * x * x
    for n in range(1, ACCURACY.max_terms):
        term *= x2 / (2 * n + 1)
        total += term
        if term <= ACCURACY.target_abs_err * total:
            return TWO_OVER_SQRT_PI * math.exp(-x * x) * total
    raise AccuracyError(f"erf series did not converge at x={x}", best_estimate=TWO_OVER_SQRT_PI * math.exp(-x * x) * total)


def _erfc_continued_fraction(x: float) -> float:
    """Laplace continued fraction x + (1/2)/(x + 1/(x + (3/2)/(x + ...))), modified Lentz."""
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    for n in range(1, ACCURACY.max_terms):
        a = 0.5 * n
        d = x + a * d
        d = tiny if d == 0.0 else d
        c = x + a / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) <= CF_RELATIVE_TOL:
            return math.exp(-x * x) / (math.sqrt(math.pi) * f)
    raise AccuracyError(
        f"erfc continued fraction did not converge at x={x}",
        best_estimate=math.exp(-x * x) / (math.sqrt(math.pi) * f),
    )


def erfc(x: float) -> float:
    """Complementary error function on the real line.

    Absolute error stays below 1e-12 on |x| <= 27; beyond that the result
    underflows to 0 (or saturates at 2 for negative x).
    """
    x = _check_finite(x)
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x < ERFC_SWITCH:
        return 1.0 - _erf_series(x)
    return _erfc_continued_fraction(x)


def _dawson_series(x: float) -> float:
    # e^{-x²} Σ x^{2n+1} / (n! (2n+1)); terms are positive so no cancellation.
    x2 = x * x
    power = x
    total = x
    for n in range(1, ACCURACY.max_terms):
        power *= x2 / n
        term = power / (2 * n + 1)
        total += term
        if term <= ACCURACY.target_abs_err * total:
            return math.exp(-x2) * total
    raise AccuracyError(f"Dawson series did not converge at x={x}", best_estimate=math.exp(-x2) * total)


def _dawson_asymptotic(x: float) -> float:
    # 1/(2x) Σ (2k-1)!! / (2x²)^k, truncated at its smallest term.
    inv = 1.0 / (2.0 * x * x)
    term = 1.0
    total = 1.0
    for k in range(1, ACCURACY.max_terms):
        nxt = term * (2 * k - 1) * inv
        if nxt >= term:
            break
        term = nxt
        total += term
        if term <= ACCURACY.target_abs_err * total:
            break
    return total / (2.0 * x)


def dawson(x: float) -> float:
    """Dawson integral D(x) = e^{-x²} ∫₀ˣ e^{t²} dt (odd in x)."""
    x = _check_finite(x)
    if x < 0.0:
        return -dawson(-x)
    if x == 0.0:
        return 0.0
    if x <= DAWSON_SWITCH:
        return _dawson_series(x)
    return _dawson_asymptotic(x)


def erfc_imag_scaled(x: float) -> complex:
    """Return ``e^{-x²}·Erfc(ix) = e^{-x²} - (2/√π) D(x) i``.

    Bounded for every real x; ``x`` and ``-x`` give complex conjugates.
    """
    x = _check_finite(x)
    return complex(math.exp(-x * x), -TWO_OVER_SQRT_PI * dawson(x))
