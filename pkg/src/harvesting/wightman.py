"""Detector worldlines and Wightman functions of a massless scalar field.

Worldlines are parameterised by proper time and evaluated on a float or
on a numpy array of proper times. Wightman functions take the
coordinate-time difference ``dt = t - t'``, the spatial distance ``r`` and
the regulator ``eps``; the vacuum one is

    W = -1 / (4π² [(dt - iε)² - r²])

and the thermal one is its image sum over imaginary-time shifts ``m/T``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from scipy.special import polygamma

from .exceptions import AccuracyError, ContractError, DomainError
from .quad import RegulatorPolicy

logger = logging.getLogger(__name__)

FOUR_PI_SQ = 4.0 * math.pi**2

IMAGE_HARD_CAP = 1_000_000
IMAGE_START = 32
IMAGE_RTOL = 1e-14
IMAGE_BLOCK = 512
DEFAULT_IMAGE_CUTOFF = 64
# Largest aτ evaluated with the math module; beyond it numpy overflows to inf.
SCALAR_ARGUMENT_LIMIT = 700.0


@dataclass(frozen=True)
class SpacetimePoint:
    """An event, or an array of events when the fields are numpy arrays."""

    t: float | np.ndarray
    x: float | np.ndarray
    y: float | np.ndarray
    z: float | np.ndarray

    def interval_to(self, other: SpacetimePoint) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(t - t', |x - x'|)``."""
        if all(isinstance(v, float) for v in (self.t, self.x, self.y, self.z, other.t, other.x, other.y, other.z)):
            return self.t - other.t, math.hypot(self.x - other.x, self.y - other.y, self.z - other.z)
        dt = np.asarray(self.t) - np.asarray(other.t)
        r = np.sqrt(
            (np.asarray(self.x) - np.asarray(other.x)) ** 2
            + (np.asarray(self.y) - np.asarray(other.y)) ** 2
            + (np.asarray(self.z) - np.asarray(other.z)) ** 2
        )
        return dt, r


class TrajectoryKind(StrEnum):
    PARALLEL_A = "parallel_A"
    PARALLEL_B = "parallel_B"
    ANTIPARALLEL_A = "antiparallel_A"
    ANTIPARALLEL_B = "antiparallel_B"
    PERPENDICULAR_A = "perpendicular_A"
    PERPENDICULAR_B = "perpendicular_B"
    STATIC_AT_ORIGIN = "static_at_origin"
    STATIC_AT_L = "static_at_L"

    @property
    def is_static(self) -> bool:
        return self in (TrajectoryKind.STATIC_AT_ORIGIN, TrajectoryKind.STATIC_AT_L)


@dataclass(frozen=True)
class Trajectory:
    """A detector worldline.

    Every accelerated kind has constant proper acceleration ``accel`` along
    one spatial axis; the pairs are laid out so the laboratory separation
    at τ = 0 equals ``separation``. The antiparallel pair accelerates apart
    and its worldlines never meet.
    """

    kind: TrajectoryKind
    accel: float = 0.0
    separation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", TrajectoryKind(self.kind))
        if not (math.isfinite(self.accel) and math.isfinite(self.separation)):
            raise DomainError("trajectory parameters must be finite")
        if self.separation < 0:
            raise DomainError(f"separation must be non-negative, got {self.separation}")
        if self.accel < 0:
            raise DomainError(f"acceleration must be non-negative, got {self.accel}")
        if not self.kind.is_static and self.accel == 0:
            raise DomainError(f"{self.kind} needs a positive acceleration")

    def point(self, tau: float | np.ndarray) -> SpacetimePoint:
        return trajectory_point(self, tau)

    def coordinate_time(self, tau: float | np.ndarray) -> np.ndarray:
        tau = np.asarray(tau, dtype=float)
        if self.kind.is_static:
            return tau
        return np.sinh(self.accel * tau) / self.accel

    def proper_time(self, t: float | np.ndarray) -> np.ndarray:
        """Inverse of :meth:`coordinate_time`."""
        t = np.asarray(t, dtype=float)
        if self.kind.is_static:
            return t
        return np.arcsinh(self.accel * t) / self.accel


def trajectory_point(traj: Trajectory, tau: float | np.ndarray) -> SpacetimePoint:
    """The event at proper time ``tau``; floats stay floats, arrays stay arrays."""
    lib = math if isinstance(tau, float) and abs(traj.accel * tau) < SCALAR_ARGUMENT_LIMIT else np
    if lib is np:
        tau = np.asarray(tau, dtype=float)
    zero = 0.0 if lib is math else np.zeros_like(tau)
    L = traj.separation
    kind = traj.kind
    if kind is TrajectoryKind.STATIC_AT_ORIGIN:
        return SpacetimePoint(tau, zero, zero, zero)
    if kind is TrajectoryKind.STATIC_AT_L:
        return SpacetimePoint(tau, zero + L, zero, zero)

    a = traj.accel
    t = lib.sinh(a * tau) / a
    rise = lib.cosh(a * tau) / a
    match kind:
        case TrajectoryKind.PARALLEL_A | TrajectoryKind.ANTIPARALLEL_A:
            return SpacetimePoint(t, rise, zero, zero)
        case TrajectoryKind.PARALLEL_B:
            return SpacetimePoint(t, rise + L, zero, zero)
        case TrajectoryKind.ANTIPARALLEL_B:
            return SpacetimePoint(t, -rise + 2.0 / a - L, zero, zero)
        case TrajectoryKind.PERPENDICULAR_A:
            return SpacetimePoint(t, rise - 1.0 / a, zero, zero)
        case TrajectoryKind.PERPENDICULAR_B:
            return SpacetimePoint(t, zero + L, rise - 1.0 / a, zero)
    raise ContractError(f"unsupported trajectory kind {kind!r}")


def vacuum_wightman(dt, r, eps: float):
    """Vacuum Wightman function, vectorised over ``dt`` and ``r``."""
    z = np.asarray(dt) - 1j * eps
    return -1.0 / (FOUR_PI_SQ * (z * z - np.asarray(r) ** 2))


def thermal_image_term(dt, r, T: float, m: int, eps: float):
    """The ``m``-th image of the thermal sum; ``dt`` may be complex."""
    z = np.asarray(dt) - 1j * m / T - 1j * eps
    return -1.0 / (FOUR_PI_SQ * (z * z - np.asarray(r) ** 2))


def _image_block(z: np.ndarray, r2: np.ndarray, T: float, first: int, last: int) -> np.ndarray:
    """Sum of the ±m image pairs for first <= m <= last."""
    total = np.zeros(np.broadcast(z, r2).shape, dtype=complex)
    for start in range(first, last + 1, IMAGE_BLOCK):
        m = np.arange(start, min(start + IMAGE_BLOCK, last + 1), dtype=float) / T
        zz = z[..., None]
        rr = r2[..., None]
        total += np.sum(1.0 / ((zz - 1j * m) ** 2 - rr) + 1.0 / ((zz + 1j * m) ** 2 - rr), axis=-1)
    return total


def _image_tail(z: np.ndarray, r2: np.ndarray, T: float, n: int) -> np.ndarray:
    """Asymptotic Σ_{m>n} of the image pairs through order T⁴/m⁴."""
    return -2.0 * T**2 * polygamma(1, n + 1) + 2.0 * (3.0 * z * z + r2) * T**4 * polygamma(3, n + 1) / 6.0


def thermal_wightman_sum(dt, r, T: float, n_max: int | None = None, eps: float = 0.0, *, tail_correction: bool = False):
    """Thermal Wightman function as an image sum over ``|m| <= n_max``.

    With an explicit ``n_max`` the plain partial sum is returned, optionally
    with the asymptotic tail added. With ``n_max=None`` the tail-corrected
    sum is grown by doubling until two successive values agree to 1e-14.

    Raises:
        DomainError: ``T <= 0`` or ``n_max < 0``.
        AccuracyError: the adaptive sum hits the cutoff of 10⁶ images.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    z = np.asarray(dt, dtype=complex) - 1j * eps
    r2 = np.asarray(r, dtype=float) ** 2
    central = 1.0 / (z * z - r2)

    if n_max is not None:
        if n_max < 0:
            raise DomainError(f"n_max must be non-negative, got {n_max}")
        total = central + (_image_block(z, r2, T, 1, n_max) if n_max > 0 else 0)
        if tail_correction:
            total = total + _image_tail(z, r2, T, n_max)
        return -total / FOUR_PI_SQ

    n = IMAGE_START
    partial = central + _image_block(z, r2, T, 1, n)
    previous = partial + _image_tail(z, r2, T, n)
    while 2 * n <= IMAGE_HARD_CAP:
        partial = partial + _image_block(z, r2, T, n + 1, 2 * n)
        n *= 2
        current = partial + _image_tail(z, r2, T, n)
        change = float(np.max(np.abs(current - previous)))
        scale = float(np.max(np.abs(current)))
        if change <= IMAGE_RTOL * max(scale, 1e-300):
            logger.debug("image sum settled at n=%d (T=%g)", n, T)
            return -current / FOUR_PI_SQ
        previous = current
    raise AccuracyError(f"image sum not settled at n={n}", best_estimate=None)


def thermal_wightman_closed(dt, L: float, T: float, eps: float = 0.0):
    """Closed form of the image sum for two events a fixed distance ``L`` apart."""
    if not L > 0:
        raise DomainError(f"separation must be positive for the closed thermal form, got {L}")
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    dt = np.asarray(dt, dtype=float)
    k = math.pi * T
    return T / (8.0 * math.pi * L) * (
        1.0 / np.tanh(k * (L - dt + 1j * eps)) + 1.0 / np.tanh(k * (L + dt - 1j * eps))
    )


def thermal_wightman_coincident(dt, T: float, eps: float = 0.0):
    """The ``r → 0`` limit of the closed form, -T² / (4 sinh²(πT(dt - iε)))."""
    s = np.sinh(math.pi * T * (np.asarray(dt, dtype=float) - 1j * eps))
    return -(T**2) / (4.0 * s * s)


class WightmanKind(StrEnum):
    VACUUM = "vacuum"
    THERMAL_CLOSED = "thermal_closed"
    THERMAL_SUM = "thermal_sum"


@dataclass(frozen=True)
class WightmanEvaluator:
    """A two-point function bound to a field state and a regulator policy.

    ``image_cutoff`` is the number of image pairs kept by ``thermal_sum``
    (with the asymptotic tail added); ``0`` selects the adaptive sum.
    """

    kind: WightmanKind = WightmanKind.VACUUM
    temperature: float = 0.0
    regulator: RegulatorPolicy = field(default_factory=RegulatorPolicy)
    image_cutoff: int = DEFAULT_IMAGE_CUTOFF

    def __post_init__(self):
        object.__setattr__(self, "kind", WightmanKind(self.kind))
        if self.kind is not WightmanKind.VACUUM and not self.temperature > 0:
            raise DomainError(f"{self.kind} needs a positive temperature")
        if self.image_cutoff < 0:
            raise DomainError("image_cutoff must be non-negative")

    def supports(self, traj_a: Trajectory, traj_b: Trajectory) -> bool:
        if self.kind is WightmanKind.THERMAL_CLOSED:
            return traj_a.kind.is_static and traj_b.kind.is_static
        return True

    def __call__(self, x: SpacetimePoint, x_prime: SpacetimePoint, eps: float):
        dt, r = x.interval_to(x_prime)
        match self.kind:
            case WightmanKind.VACUUM:
                return vacuum_wightman(dt, r, eps)
            case WightmanKind.THERMAL_SUM:
                if self.image_cutoff == 0:
                    return thermal_wightman_sum(dt, r, self.temperature, None, eps)
                return thermal_wightman_sum(dt, r, self.temperature, self.image_cutoff, eps, tail_correction=True)
            case WightmanKind.THERMAL_CLOSED:
                apart = r > 0
                safe_r = np.where(apart, r, 1.0)
                k = math.pi * self.temperature
                closed = self.temperature / (8.0 * math.pi * safe_r) * (
                    1.0 / np.tanh(k * (safe_r - dt + 1j * eps)) + 1.0 / np.tanh(k * (safe_r + dt - 1j * eps))
                )
                return np.where(apart, closed, thermal_wightman_coincident(dt, self.temperature, eps))
        raise ContractError(f"unsupported Wightman kind {self.kind!r}")
