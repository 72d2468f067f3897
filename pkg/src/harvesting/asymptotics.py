"""Closed-form approximants of the correlation term and the transition probability.

These are validators for the numerical evaluators in :mod:`harvesting.harvest`
and are never used as production values. Each :class:`Regime` knows the
parameter range where its expansion is meant to hold; evaluating outside it
emits a :class:`RegimeWarning` rather than failing, so breakdown can be
examined on purpose.

``rate`` follows the :class:`~harvesting.harvest.Scenario` convention: aσ
for ``parallel_acc`` and Tσ for ``thermal_static``.
"""

from __future__ import annotations

import logging
import math
import warnings
from enum import StrEnum

from .exceptions import ContractError, DomainError
from .harvest import DetectorParams, ScenarioKind, vacuum_transition_probability, x_vacuum_static
from .specfun import dawson

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)

# "Much smaller than one" for aσ and for L/σ.
SMALL_RATE = 1.0
SMALL_SEPARATION = 0.5
# "Much larger than" for L against aσ and aσ against Ωσ.
LARGE_RATIO = 3.0


class RegimeWarning(UserWarning):
    """An approximant was evaluated outside its range of validity."""


class Regime(StrEnum):
    SMALL_RATE = "small_rate"
    SMALL_RATE_SMALL_L = "small_rate_small_L"
    SMALL_RATE_P = "small_rate_P"
    LARGE_AL = "large_aL"

    def holds(self, gap: float, accel: float, L: float | None = None) -> bool:
        """Validity predicate on (Ωσ, aσ, L/σ); thermal callers pass a = 2πT."""
        match self:
            case Regime.SMALL_RATE | Regime.SMALL_RATE_P:
                return accel <= SMALL_RATE
            case Regime.SMALL_RATE_SMALL_L:
                return accel <= SMALL_RATE and L is not None and L <= SMALL_SEPARATION
            case Regime.LARGE_AL:
                return (
                    L is not None and accel > 1.0 and L >= LARGE_RATIO * accel and accel >= LARGE_RATIO * gap
                )
        return False


def _warn_outside(regime: Regime, gap: float, accel: float, L: float | None) -> None:
    if not regime.holds(gap, accel, L):
        warnings.warn(
            f"{regime} approximant evaluated outside its range (Ω={gap}, a={accel}, L={L})",
            RegimeWarning,
            stacklevel=3,
        )


def _temperature(kind: ScenarioKind, rate: float) -> float:
    if kind is ScenarioKind.PARALLEL_ACC:
        return rate / (2.0 * math.pi)
    if kind is ScenarioKind.THERMAL_STATIC:
        return rate
    raise ContractError(f"no approximant for {kind}")


def _small_rate_acc_correction(det: DetectorParams, T: float, L: float) -> complex:
    """O(T²) part of X for parallel acceleration at small rate."""
    gap2 = det.gap**2
    x = L / 2.0
    d = dawson(x)
    imaginary = (
        -det.strength * math.pi**1.5 * T**2 / (24.0 * L) * math.exp(-(L * L + 4.0 * gap2) / 4.0)
        * ((3.0 * (4.0 * L**2 + 4.0 - L**4) * gap2 - 9.0 * L**2 - 6.0) + 2.0 * L**4)
    )
    real = (
        -det.strength * T**2 * SQRT_PI * math.exp(-gap2) / 2.0
        * (
            SQRT_PI / 4.0 * (2.0 - 4.0 * gap2) * (1.0 - 2.0 * x**2 + 4.0 * x**3 * d - 4.0 * x * d - d / x)
            + SQRT_PI / 3.0 * (1.0 - x**2 + 2.0 * x**3 * d - 3.0 * x * d)
        )
    )
    return complex(real, imaginary)


def _small_rate(kind: ScenarioKind, det: DetectorParams, T: float, L: float) -> complex:
    vacuum = x_vacuum_static(det, L)
    if kind is ScenarioKind.THERMAL_STATIC:
        return vacuum - det.strength * math.pi * T**2 * math.exp(-det.gap**2) / 6.0
    return vacuum + _small_rate_acc_correction(det, T, L)


def _small_rate_small_l(kind: ScenarioKind, det: DetectorParams, T: float, L: float) -> float:
    envelope = det.strength * math.exp(-det.gap**2)
    common = envelope / (4.0 * SQRT_PI * L) - envelope * L * (math.pi - 2.0) / (16.0 * math.pi**1.5)
    if kind is ScenarioKind.THERMAL_STATIC:
        return common + envelope * SQRT_PI * L * T**2 / 6.0
    return common + envelope / (4.0 * L) * sign_criterion(det) * math.pi**1.5 * T**2


def _large_al(kind: ScenarioKind, det: DetectorParams, T: float, L: float) -> float:
    gap = det.gap
    if kind is ScenarioKind.THERMAL_STATIC:
        return det.strength * T * math.exp(-gap * gap) / (2.0 * L)
    return det.strength * (
        math.exp(-gap * gap) / (2.0 * math.pi * L * L)
        + math.exp(8.0 * math.pi**2 * T * T - gap * gap) * math.cos(4.0 * math.pi * T * gap) / (2.0 * math.pi**3 * T * T * L**4)
    )


def approx_x(regime: Regime, scenario_kind: ScenarioKind, det: DetectorParams, rate: float, L: float) -> complex | float:
    """Closed-form approximation of X.

    ``small_rate`` returns the complex value; ``small_rate_small_L`` and
    ``large_aL`` return the modulus only.

    Raises:
        DomainError: ``L <= 0`` or a negative rate.
        ContractError: the regime has no X approximant, or the scenario kind
            is neither ``parallel_acc`` nor ``thermal_static``.
    """
    regime = Regime(regime)
    kind = ScenarioKind(scenario_kind)
    if not (math.isfinite(L) and L > 0):
        raise DomainError(f"separation must be positive, got {L}")
    if not (math.isfinite(rate) and rate >= 0):
        raise DomainError(f"rate must be non-negative, got {rate}")
    T = _temperature(kind, rate)
    _warn_outside(regime, det.gap, 2.0 * math.pi * T, L)

    match regime:
        case Regime.SMALL_RATE:
            return _small_rate(kind, det, T, L)
        case Regime.SMALL_RATE_SMALL_L:
            return _small_rate_small_l(kind, det, T, L)
        case Regime.LARGE_AL:
            if T == 0:
                raise DomainError("the large-aL approximant needs a positive rate")
            return _large_al(kind, det, T, L)
    raise ContractError(f"{regime} has no correlation-term approximant; use approx_p")


def approx_p(det: DetectorParams, T: float) -> float:
    """Small-temperature transition probability, exact in the vacuum plus λ²πT²e^{-Ω²}/6."""
    if not (math.isfinite(T) and T >= 0):
        raise DomainError(f"temperature must be non-negative, got {T}")
    _warn_outside(Regime.SMALL_RATE_P, det.gap, 2.0 * math.pi * T, None)
    return vacuum_transition_probability(det) + det.strength * math.pi * T * T * math.exp(-det.gap**2) / 6.0


def sign_criterion(det: DetectorParams) -> float:
    """2Ω²σ² - 1: positive when accelerated detectors correlate more strongly than thermal ones."""
    return 2.0 * det.gap**2 - 1.0
