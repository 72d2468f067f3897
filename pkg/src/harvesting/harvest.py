"""Transition probabilities, correlation terms and concurrence.

Two families of evaluators live here:

* reduced evaluators, which start from the one- and two-dimensional
  integral representations specific to parallel acceleration, a static
  pair in a thermal bath and a static pair in vacuum, and take the ε → 0
  limit exactly (principal value plus delta);
* the generic engine, which integrates the defining double integrals along
  arbitrary worldlines. With a finite regulator extrapolated to ε → 0 it
  serves as an oracle for the reduced evaluators; in the vacuum its X
  takes the light-cone poles as principal value plus delta and is the
  production path for the antiparallel and perpendicular layouts.

Every value is proportional to λ²; all lengths and times are in units of
the switching width.
"""

from __future__ import annotations

import cmath
import functools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy.optimize import brentq

from .exceptions import ContractError, DomainError
from .quad import (
    HALF_WIDTH_WINDOW,
    UNIT_WINDOW,
    QuadResult,
    RegulatorPolicy,
    WindowSpec,
    integrate_1d,
    integrate_iterated,
    integrate_pv_delta,
)
from .specfun import erfc, erfc_imag_scaled
from .wightman import FOUR_PI_SQ, Trajectory, TrajectoryKind, WightmanEvaluator, WightmanKind

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
MIN_SEPARATION = 1e-3
DEFAULT_TOL = 1e-9
# Below this argument the reduced transition integrand switches to its series.
SERIES_CUTOFF = 1e-2
# Sampling density for light-cone crossings in the generic engine.
CROSSING_SCAN_POINTS = 257


class Method(StrEnum):
    PV = "pv"
    REGULATED = "regulated"


@dataclass(frozen=True)
class DetectorParams:
    """Energy gap Ωσ and coupling λ of the identical detector pair."""

    gap: float
    coupling: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gap) and math.isfinite(self.coupling)):
            raise DomainError("detector parameters must be finite")
        if self.gap < 0:
            raise DomainError(f"gap must be non-negative, got {self.gap}")
        if not self.coupling > 0:
            raise DomainError(f"coupling must be positive, got {self.coupling}")

    @property
    def strength(self) -> float:
        return self.coupling**2


class ScenarioKind(StrEnum):
    PARALLEL_ACC = "parallel_acc"
    ANTIPARALLEL_ACC = "antiparallel_acc"
    PERPENDICULAR_ACC = "perpendicular_acc"
    THERMAL_STATIC = "thermal_static"
    VACUUM_STATIC = "vacuum_static"

    @property
    def is_accelerated(self) -> bool:
        return self in (ScenarioKind.PARALLEL_ACC, ScenarioKind.ANTIPARALLEL_ACC, ScenarioKind.PERPENDICULAR_ACC)


_PAIRS = {
    ScenarioKind.PARALLEL_ACC: (TrajectoryKind.PARALLEL_A, TrajectoryKind.PARALLEL_B),
    ScenarioKind.ANTIPARALLEL_ACC: (TrajectoryKind.ANTIPARALLEL_A, TrajectoryKind.ANTIPARALLEL_B),
    ScenarioKind.PERPENDICULAR_ACC: (TrajectoryKind.PERPENDICULAR_A, TrajectoryKind.PERPENDICULAR_B),
    ScenarioKind.THERMAL_STATIC: (TrajectoryKind.STATIC_AT_ORIGIN, TrajectoryKind.STATIC_AT_L),
    ScenarioKind.VACUUM_STATIC: (TrajectoryKind.STATIC_AT_ORIGIN, TrajectoryKind.STATIC_AT_L),
}


@dataclass(frozen=True)
class ReducedIntegrandParams:
    """γ = Ω/(πT) and α = 1/(2πT)² of the one-dimensional transition integral."""

    gamma: float
    alpha: float

    @classmethod
    def from_temperature(cls, det: DetectorParams, temperature: float) -> ReducedIntegrandParams:
        if not temperature > 0:
            raise DomainError(f"temperature must be positive, got {temperature}")
        return cls(gamma=det.gap / (math.pi * temperature), alpha=1.0 / (2.0 * math.pi * temperature) ** 2)


@dataclass(frozen=True)
class Scenario:
    """A detector layout and field state.

    ``rate`` is aσ for the accelerated kinds and Tσ for ``thermal_static``;
    it is ignored (and may be 0) for ``vacuum_static``.
    """

    kind: ScenarioKind
    rate: float = 0.0
    separation: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ScenarioKind(self.kind))
        if not (math.isfinite(self.rate) and math.isfinite(self.separation)):
            raise DomainError("scenario parameters must be finite")
        if self.rate < 0:
            raise DomainError(f"rate must be non-negative, got {self.rate}")
        if self.kind is not ScenarioKind.VACUUM_STATIC and self.rate == 0:
            raise DomainError(f"{self.kind} needs a positive rate")
        if self.separation < MIN_SEPARATION:
            raise DomainError(f"separation must be at least {MIN_SEPARATION}, got {self.separation}")

    @classmethod
    def from_acceleration(cls, kind: ScenarioKind | str, accel: float, separation: float) -> Scenario:
        """Build a scenario from aσ = 2πTσ, the rate convention shared by every kind."""
        kind = ScenarioKind(kind)
        if kind is ScenarioKind.THERMAL_STATIC:
            return cls(kind, accel / (2.0 * math.pi), separation)
        if kind is ScenarioKind.VACUUM_STATIC:
            return cls(kind, 0.0, separation)
        return cls(kind, accel, separation)

    @property
    def temperature(self) -> float:
        """Field temperature, or the Unruh temperature a/2π for accelerated kinds."""
        if self.kind is ScenarioKind.VACUUM_STATIC:
            return 0.0
        if self.kind is ScenarioKind.THERMAL_STATIC:
            return self.rate
        return self.rate / (2.0 * math.pi)

    @property
    def acceleration(self) -> float:
        """The acceleration whose Unruh temperature matches this scenario."""
        return 2.0 * math.pi * self.temperature

    def trajectories(self) -> tuple[Trajectory, Trajectory]:
        kind_a, kind_b = _PAIRS[self.kind]
        accel = self.rate if self.kind.is_accelerated else 0.0
        return Trajectory(kind_a, accel, self.separation), Trajectory(kind_b, accel, self.separation)


@dataclass(frozen=True)
class OutcomeErrors:
    p_a: float = 0.0
    p_b: float = 0.0
    corr_c: float = 0.0
    corr_x: float = 0.0
    concurrence: float = 0.0


@dataclass(frozen=True)
class HarvestOutcome:
    """Leading-order density-matrix entries and the resulting concurrence.

    ``corr_c`` is only filled by the generic engine.
    """

    p_a: float
    p_b: float
    corr_c: complex | None
    corr_x: complex
    concurrence: float
    err: OutcomeErrors

    @property
    def x_abs(self) -> float:
        return abs(self.corr_x)

    @property
    def p(self) -> float:
        return math.sqrt(self.p_a * self.p_b)


def concurrence(p_a: float, p_b: float, x_abs: float) -> float:
    """2·max(0, |X| - √(P_A·P_B))."""
    if p_a < 0 or p_b < 0 or x_abs < 0:
        raise DomainError(f"concurrence inputs must be non-negative, got ({p_a}, {p_b}, {x_abs})")
    return 2.0 * max(0.0, x_abs - math.sqrt(p_a * p_b))


# -----------------------------------------------------------------------------
# Transition probability
# -----------------------------------------------------------------------------


def _removable(z: float) -> float:
    """1/z² - 1/sinh²z, continued by its series near 0."""
    z2 = z * z
    if z < SERIES_CUTOFF:
        return 1.0 / 3.0 - z2 / 15.0 + 2.0 * z2 * z2 / 189.0
    csch = 2.0 * math.exp(-z) / -math.expm1(-2.0 * z)
    return 1.0 / z2 - csch * csch


def vacuum_transition_probability(det: DetectorParams) -> float:
    """λ²/(4π)·[e^{-Ω²} - √π Ω Erfc(Ω)], the inertial vacuum response."""
    gap = det.gap
    return det.strength / (4.0 * math.pi) * (math.exp(-gap * gap) - SQRT_PI * gap * erfc(gap))


def transition_probability_result(det: DetectorParams, rate: float, tol: float = DEFAULT_TOL) -> QuadResult:
    if not (math.isfinite(rate) and rate >= 0):
        raise DomainError(f"rate must be finite and non-negative, got {rate}")
    closed = vacuum_transition_probability(det)
    if rate == 0:
        return QuadResult(closed, 0.0, 0)

    temperature = rate / (2.0 * math.pi)
    params = ReducedIntegrandParams.from_temperature(det, temperature)
    # s = u/√α turns the Gaussian into e^{-u²}, whose window is the unit one.
    scale = 1.0 / math.sqrt(params.alpha)

    def integrand(u: float) -> float:
        return math.cos(params.gamma * scale * u) * math.exp(-u * u) * _removable(scale * u)

    result = integrate_1d(integrand, 0.0, UNIT_WINDOW.truncation_radius, tol)
    prefactor = det.strength * temperature * scale / (2.0 * SQRT_PI)
    thermal = result.scaled(prefactor)
    return QuadResult(complex(thermal.value.real + closed), thermal.abs_err, thermal.evaluations)


def transition_probability(det: DetectorParams, rate: float, tol: float = DEFAULT_TOL) -> float:
    """Excitation probability of a uniformly accelerated detector, rate = aσ.

    Also the response of a static detector in a bath at T = a/2π. ``rate``
    of 0 gives the inertial vacuum value.
    """
    return transition_probability_result(det, rate, tol).value.real


# -----------------------------------------------------------------------------
# Correlation term X, reduced forms
# -----------------------------------------------------------------------------


def _check_separation(L: float) -> None:
    if not (math.isfinite(L) and L > 0):
        raise DomainError(f"separation must be positive, got {L}")


def x_vacuum_static(det: DetectorParams, L: float) -> complex:
    """X for two static detectors a distance L apart in the vacuum."""
    _check_separation(L)
    return -1j * det.strength * math.exp(-det.gap**2) * erfc_imag_scaled(L / 2.0) / (4.0 * L * SQRT_PI)


def x_thermal_result(
    det: DetectorParams,
    T: float,
    L: float,
    tol: float = DEFAULT_TOL,
    *,
    method: Method = Method.PV,
    regulator: RegulatorPolicy | None = None,
) -> QuadResult:
    _check_separation(L)
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T}")
    k = math.pi * T
    prefactor = -det.strength * math.exp(-det.gap**2) * T / (4.0 * SQRT_PI * L)
    upper = L + HALF_WIDTH_WINDOW.truncation_radius

    regular = integrate_1d(lambda s: np.exp(-s * s / 4.0) / np.tanh(k * (L + s)), 0.0, upper, tol)

    if Method(method) is Method.PV:
        polar = integrate_pv_delta(
            lambda s: np.exp(-s * s / 4.0) * np.cosh(k * (L - s)),
            lambda s: np.sinh(k * (L - s)),
            [L],
            0.0,
            upper,
            tol,
            du=lambda s: -k * np.cosh(k * (L - s)),
        )
    else:
        policy = regulator or RegulatorPolicy()

        def sample(eps: float) -> QuadResult:
            return integrate_1d(
                lambda s: np.exp(-s * s / 4.0) * np.cosh(k * (L - s)) / (np.sinh(k * (L - s)) - 1j * eps),
                0.0,
                upper,
                tol,
                points=[L],
            )

        limit = policy.limit(sample, tol)
        polar = QuadResult(limit.value, limit.abs_err, limit.evaluations)

    return (regular + polar).scaled(prefactor)


def x_thermal(det: DetectorParams, T: float, L: float, tol: float = DEFAULT_TOL, *, method: Method = Method.PV) -> complex:
    """X for two static detectors at distance L in a thermal bath at temperature T.

    The simple pole at s = L of the second term is taken as principal value
    plus the delta piece (i/T)·e^{-L²/4}; ``method="regulated"`` instead
    extrapolates finite-ε integrals and exists for cross-checks.
    """
    return x_thermal_result(det, T, L, tol, method=method).value


def _accelerated_root(k: float, L: float, x: float) -> float:
    """ỹ₁(x̃) = arcsinh(κL e^{κx̃})/κ, with κ = πT = a/2."""
    return math.asinh(k * L * math.exp(k * x)) / k


def _sinhc(k: float, y):
    """sinh(κy)/κ, finite as κ → 0."""
    return np.sinh(k * y) / k


def x_accelerated_result(
    det: DetectorParams,
    a: float,
    L: float,
    tol: float = DEFAULT_TOL,
    *,
    method: Method = Method.PV,
    regulator: RegulatorPolicy | None = None,
) -> QuadResult:
    _check_separation(L)
    if not (math.isfinite(a) and a > 0):
        raise DomainError(f"acceleration must be positive, got {a}")
    k = a / 2.0
    gap = det.gap
    radius = HALF_WIDTH_WINDOW.truncation_radius

    # With κ = a/2 the inner denominator divided by κ² reads
    # 2e^{-κx̃} cosh(κ(ỹ₁+ỹ)/2) · sinh(κ(ỹ₁-ỹ)/2)/κ · (L + e^{κx̃} sinh(κỹ)/κ),
    # whose only zero on ỹ > 0 is the simple root ỹ₁.
    def denominator(x: float, root: float) -> Callable[[np.ndarray], np.ndarray]:
        def u(y):
            return (
                2.0 * math.exp(-k * x) * np.cosh(k * (root + y) / 2.0) * _sinhc(k, (root - y) / 2.0)
                * (L + math.exp(k * x) * _sinhc(k, y))
            )
        return u

    def slope(x: float) -> Callable[[np.ndarray], np.ndarray]:
        def du(y):
            first = L - math.exp(-k * x) * _sinhc(k, y)
            second = L + math.exp(k * x) * _sinhc(k, y)
            return np.cosh(k * y) * (first * math.exp(k * x) - second * math.exp(-k * x))
        return du

    policy = regulator or RegulatorPolicy()

    def weight(y):
        return np.exp(-y * y / 4.0)

    def inner_pv(x: float) -> QuadResult:
        root = _accelerated_root(k, L, x)
        upper = max(radius, root + 1.0)
        return integrate_pv_delta(weight, denominator(x, root), [root], 0.0, upper, tol, du=slope(x))

    def inner_regulated(x: float, eps: float) -> QuadResult:
        root = _accelerated_root(k, L, x)
        upper = max(radius, root + 1.0)
        u = denominator(x, root)
        return integrate_1d(lambda y: weight(y) / (u(y) - 1j * eps), 0.0, upper, tol, points=[root])

    def outer(inner: Callable[[float], QuadResult]) -> QuadResult:
        def shaped(x: float) -> QuadResult:
            return inner(x).scaled(math.cos(gap * x) * math.exp(-x * x / 4.0))

        return integrate_iterated(shaped, -radius, radius, tol)

    if Method(method) is Method.PV:
        total = outer(inner_pv)
    else:
        limit = policy.limit(lambda eps: outer(lambda x: inner_regulated(x, eps)), tol)
        total = QuadResult(limit.value, limit.abs_err, limit.evaluations)

    logger.debug("X_acc(Ω=%g, a=%g, L=%g) = %s ± %.2g", gap, a, L, total.value, total.abs_err)
    return total.scaled(-det.strength / (4.0 * math.pi**2))


def x_accelerated(det: DetectorParams, a: float, L: float, tol: float = DEFAULT_TOL, *, method: Method = Method.PV) -> complex:
    """X for two detectors accelerating in parallel, a distance L apart.

    The inner integral over the time difference carries one simple pole per
    outer point, located analytically and taken as principal value plus
    delta. ``method="regulated"`` extrapolates finite-ε integrals instead.
    """
    return x_accelerated_result(det, a, L, tol, method=method).value


# -----------------------------------------------------------------------------
# Generic engine
# -----------------------------------------------------------------------------


def _switching(tau: float) -> float:
    return math.exp(-tau * tau / 2.0)


def _simultaneous(traj_a: Trajectory, traj_b: Trajectory, tau: float) -> float:
    """Proper time of B at the coordinate time of A(τ)."""
    return float(traj_b.proper_time(traj_a.coordinate_time(tau)))


def _crossings(traj_a: Trajectory, traj_b: Trajectory, tau: float, lo: float, hi: float, split: float) -> list[float]:
    """Proper times τ′ of B on the light cone of A(τ)."""
    event = traj_a.point(tau)

    def interval(tp):
        dt, r = event.interval_to(traj_b.point(tp))
        return dt * dt - r * r

    grid = np.linspace(lo, hi, CROSSING_SCAN_POINTS)
    if lo < split < hi:
        grid = np.sort(np.append(grid, split))
    values = interval(grid)
    roots = []
    for left, right, f_left, f_right in zip(grid[:-1], grid[1:], values[:-1], values[1:], strict=True):
        if f_left == 0.0:
            roots.append(float(left))
        elif f_left * f_right < 0:
            roots.append(brentq(lambda tp: float(interval(float(tp))), float(left), float(right), xtol=1e-13))
    return roots


def _light_cone_roots(traj_a: Trajectory, traj_b: Trajectory, window: WindowSpec) -> Callable[[float], tuple[float, ...]]:
    """Memoised crossings inside the window, shared by every regulator sample."""
    lo, hi = window.bounds

    @functools.cache
    def roots(tau: float) -> tuple[float, ...]:
        found = _crossings(traj_a, traj_b, tau, lo, hi, _simultaneous(traj_a, traj_b, tau))
        return tuple(p for p in found if lo < p < hi)

    return roots


Row = Callable[[float], Callable[[float], complex]]


def _pair_integral(row: Row, points: Callable[[float], Sequence[float]], window: WindowSpec, tol: float) -> QuadResult:
    """∫dτ ∫dτ′ row(τ)(τ′) over the window, with inner breakpoints ``points(τ)``."""
    lo, hi = window.bounds

    def inner(tau: float) -> QuadResult:
        return integrate_1d(row(tau), lo, hi, tol, points=points(tau))

    return integrate_iterated(inner, lo, hi, tol)


def _regulated(W: WightmanEvaluator, sample: Callable[[float], QuadResult], tol: float) -> QuadResult:
    limit = W.regulator.limit(sample, tol)
    return QuadResult(limit.value, limit.abs_err, limit.evaluations)


def generic_transition_probability(
    traj: Trajectory, W: WightmanEvaluator, det: DetectorParams, *, tol: float = DEFAULT_TOL, window: WindowSpec = UNIT_WINDOW
) -> QuadResult:
    """P from its defining double integral, regulated and extrapolated to ε = 0.

    Raises:
        AccuracyError: the extrapolated value misses the regulator policy's target.
    """
    gap = det.gap

    def sample(eps: float) -> QuadResult:
        def row(tau: float) -> Callable[[float], complex]:
            event = traj.point(tau)
            weight = _switching(tau) * cmath.exp(-1j * gap * tau)
            return lambda tp: weight * _switching(tp) * cmath.exp(1j * gap * tp) * W(event, traj.point(tp), eps)

        return _pair_integral(row, lambda tau: (tau,), window, tol)

    return _regulated(W, sample, tol).scaled(det.strength)


def generic_correlation_c(
    traj_a: Trajectory, traj_b: Trajectory, W: WightmanEvaluator, det: DetectorParams,
    *, tol: float = DEFAULT_TOL, window: WindowSpec = UNIT_WINDOW,
) -> QuadResult:
    gap = det.gap
    roots = _light_cone_roots(traj_a, traj_b, window)

    def points(tau: float) -> tuple[float, ...]:
        return (_simultaneous(traj_a, traj_b, tau), *roots(tau))

    def sample(eps: float) -> QuadResult:
        def row(tau: float) -> Callable[[float], complex]:
            event = traj_a.point(tau)
            weight = _switching(tau) * cmath.exp(-1j * gap * tau)
            return lambda tp: weight * _switching(tp) * cmath.exp(1j * gap * tp) * W(event, traj_b.point(tp), eps)

        return _pair_integral(row, points, window, tol)

    return _regulated(W, sample, tol).scaled(det.strength)


def _vacuum_correlation_x(
    traj_a: Trajectory, traj_b: Trajectory, det: DetectorParams, tol: float, window: WindowSpec
) -> QuadResult:
    """Time-ordered vacuum X, each light-cone crossing taken as principal value plus delta.

    With u = r² - Δt² the ordered vacuum function is the ε → 0 limit of
    1/(4π²(u - iε)) whichever event comes first.
    """
    lo, hi = window.bounds
    gap = det.gap
    roots = _light_cone_roots(traj_a, traj_b, window)

    def g(tp: float) -> complex:
        return _switching(tp) * cmath.exp(-1j * gap * tp)

    def inner(tau: float) -> QuadResult:
        event = traj_a.point(tau)

        def u(tp: float) -> float:
            dt, r = event.interval_to(traj_b.point(tp))
            return float(r * r - dt * dt)

        return integrate_pv_delta(g, u, roots(tau), lo, hi, tol).scaled(_switching(tau) * cmath.exp(-1j * gap * tau))

    return integrate_iterated(inner, lo, hi, tol).scaled(-det.strength / FOUR_PI_SQ)


def generic_correlation_x(
    traj_a: Trajectory, traj_b: Trajectory, W: WightmanEvaluator, det: DetectorParams,
    *, tol: float = DEFAULT_TOL, window: WindowSpec = UNIT_WINDOW, method: Method | None = None,
) -> QuadResult:
    """The time-ordered correlation term.

    The vacuum Wightman function defaults to ``method="pv"``, which takes
    the light-cone poles exactly; every other case integrates at finite ε,
    splits the square along t(τ′) = t(τ) and extrapolates.

    Raises:
        ContractError: ``method="pv"`` with a thermal Wightman function.
        AccuracyError: the extrapolated value misses the regulator policy's target.
    """
    if method is None:
        method = Method.PV if W.kind is WightmanKind.VACUUM else Method.REGULATED
    if Method(method) is Method.PV:
        if W.kind is not WightmanKind.VACUUM:
            raise ContractError(f"the principal-value path needs the vacuum Wightman function, not {W.kind}")
        return _vacuum_correlation_x(traj_a, traj_b, det, tol, window)

    gap = det.gap
    roots = _light_cone_roots(traj_a, traj_b, window)

    def points(tau: float) -> tuple[float, ...]:
        return (_simultaneous(traj_a, traj_b, tau), *roots(tau))

    def sample(eps: float) -> QuadResult:
        def row(tau: float) -> Callable[[float], complex]:
            event_a = traj_a.point(tau)
            weight = _switching(tau) * cmath.exp(-1j * gap * tau)

            def f(tp: float) -> complex:
                event_b = traj_b.point(tp)
                ordered = W(event_a, event_b, eps) if event_b.t > event_a.t else W(event_b, event_a, eps)
                return weight * _switching(tp) * cmath.exp(-1j * gap * tp) * ordered

            return f

        return _pair_integral(row, points, window, tol)

    return _regulated(W, sample, tol).scaled(-det.strength)


def generic_udw(
    traj_a: Trajectory,
    traj_b: Trajectory,
    W: WightmanEvaluator,
    det: DetectorParams,
    *,
    tol: float = DEFAULT_TOL,
    window: WindowSpec = UNIT_WINDOW,
) -> HarvestOutcome:
    """Evaluate P_A, P_B, C and X straight from their defining double integrals.

    Raises:
        ContractError: ``W`` cannot be used with these worldlines (the closed
            thermal form needs two static detectors).
    """
    if not W.supports(traj_a, traj_b):
        raise ContractError(f"{W.kind} Wightman function needs static detectors")
    p_a = generic_transition_probability(traj_a, W, det, tol=tol, window=window)
    p_b = generic_transition_probability(traj_b, W, det, tol=tol, window=window)
    corr_c = generic_correlation_c(traj_a, traj_b, W, det, tol=tol, window=window)
    corr_x = generic_correlation_x(traj_a, traj_b, W, det, tol=tol, window=window)

    pa, pb = max(p_a.value.real, 0.0), max(p_b.value.real, 0.0)
    value = concurrence(pa, pb, abs(corr_x.value))
    errors = OutcomeErrors(
        p_a=p_a.abs_err,
        p_b=p_b.abs_err,
        corr_c=corr_c.abs_err,
        corr_x=corr_x.abs_err,
        concurrence=2.0 * (corr_x.abs_err + max(p_a.abs_err, p_b.abs_err)),
    )
    logger.debug("generic %s/%s (%s): P=(%g, %g) X=%s", traj_a.kind, traj_b.kind, W.kind, pa, pb, corr_x.value)
    return HarvestOutcome(pa, pb, corr_c.value, corr_x.value, value, errors)


# -----------------------------------------------------------------------------
# Dispatch
# -----------------------------------------------------------------------------


def evaluate_scenario(det: DetectorParams, sc: Scenario, *, tol: float = DEFAULT_TOL) -> HarvestOutcome:
    """Fill a :class:`HarvestOutcome` for one scenario.

    Both detectors of every layout follow the same kind of worldline, so a
    single transition probability serves for P_A and P_B.
    """
    match sc.kind:
        case ScenarioKind.VACUUM_STATIC:
            p = transition_probability_result(det, 0.0, tol)
            x = QuadResult(x_vacuum_static(det, sc.separation), 0.0, 0)
        case ScenarioKind.THERMAL_STATIC:
            p = transition_probability_result(det, sc.acceleration, tol)
            x = x_thermal_result(det, sc.temperature, sc.separation, tol)
        case ScenarioKind.PARALLEL_ACC:
            p = transition_probability_result(det, sc.rate, tol)
            x = x_accelerated_result(det, sc.rate, sc.separation, tol)
        case ScenarioKind.ANTIPARALLEL_ACC | ScenarioKind.PERPENDICULAR_ACC:
            p = transition_probability_result(det, sc.rate, tol)
            traj_a, traj_b = sc.trajectories()
            x = generic_correlation_x(traj_a, traj_b, WightmanEvaluator(WightmanKind.VACUUM), det, tol=tol)
        case _:
            raise ContractError(f"unsupported scenario {sc.kind!r}")

    p_value = max(p.value.real, 0.0)
    value = concurrence(p_value, p_value, abs(x.value))
    errors = OutcomeErrors(p_a=p.abs_err, p_b=p.abs_err, corr_x=x.abs_err, concurrence=2.0 * (x.abs_err + p.abs_err))
    return HarvestOutcome(p_value, p_value, None, complex(x.value), value, errors)
