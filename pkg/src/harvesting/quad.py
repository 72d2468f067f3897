"""Adaptive quadrature for Gaussian-damped, oscillatory, pole-carrying integrands.

Plain integrals go through :func:`scipy.integrate.quad_vec` (globally
adaptive Gauss-Kronrod, complex values allowed); the principal value at a
simple pole goes through QUADPACK's Cauchy-weighted rule,
``scipy.integrate.quad(weight="cauchy")``. Integrands are called with one
float abscissa at a time.

Simple poles of ``g/(u - iε)`` are handled in the ε → 0 limit by
:func:`integrate_pv_delta`; integrals that are only available at finite ε
are pushed to ε = 0 with :func:`extrapolate_eps`.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import pairwise

import numpy as np
from scipy import integrate

from .exceptions import AccuracyError, ContractError, DegeneracyError

logger = logging.getLogger(__name__)

Integrand = Callable[[float], complex]

DEFAULT_TOL = 1e-10
MAX_INTERVALS = 20_000
# Subinterval budget of one Cauchy-weighted QUADPACK call.
PV_LIMIT = 500

DEGENERATE_SLOPE = 1e-10

# quad_vec status codes; status 2 (roundoff-limited) is accepted.
_SUBDIVISION_LIMIT = 1
_NOT_A_NUMBER = 3


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_err: float
    evaluations: int

    def __add__(self, other: QuadResult) -> QuadResult:
        return QuadResult(self.value + other.value, self.abs_err + other.abs_err, self.evaluations + other.evaluations)

    def scaled(self, factor: complex) -> QuadResult:
        return QuadResult(self.value * factor, self.abs_err * abs(factor), self.evaluations)


@dataclass(frozen=True)
class RegulatorPolicy:
    """Finite regulator values and the polynomial order used to reach ε = 0.

    ``target_rtol`` is the relative error an extrapolated limit may carry
    before :meth:`limit` gives up on it.
    """

    eps_sequence: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3, 1.25e-3)
    extrapolation_order: int = 2
    target_rtol: float = 1e-3

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_sequence)
        object.__setattr__(self, "eps_sequence", eps)
        if self.extrapolation_order < 1:
            raise ContractError("extrapolation_order must be at least 1")
        if len(eps) < self.extrapolation_order + 1:
            raise ContractError(
                f"{len(eps)} regulator values cannot support order {self.extrapolation_order} extrapolation"
            )
        if any(e <= 0 for e in eps):
            raise ContractError("regulator values must be positive")
        if any(b >= a for a, b in zip(eps, eps[1:], strict=False)):
            raise ContractError("eps_sequence must be strictly descending")
        if not self.target_rtol > 0:
            raise ContractError("target_rtol must be positive")

    def limit(self, sample: Callable[[float], QuadResult], tol: float = 0.0) -> Extrapolation:
        """Evaluate ``sample`` at every regulator value and extrapolate to ε = 0.

        The returned error adds the extrapolation discrepancy to the sample
        quadrature errors amplified by the extrapolation weights.

        Raises:
            AccuracyError: the error exceeds ``max(tol, target_rtol·|value|)``.
        """
        results = [sample(eps) for eps in self.eps_sequence]
        limit = extrapolate_eps([(eps, r.value) for eps, r in zip(self.eps_sequence, results, strict=True)],
                                order=self.extrapolation_order)
        window = self.eps_sequence[-(self.extrapolation_order + 1):]
        gain = float(np.sum(np.abs(_lagrange_weights_at_zero(window))))
        sample_err = max(r.abs_err for r in results[-len(window):])
        evaluations = sum(r.evaluations for r in results)
        abs_err = limit.abs_err + gain * sample_err
        target = max(tol, self.target_rtol * abs(limit.value))
        if abs_err > target:
            raise AccuracyError(
                f"ε → 0 extrapolation error {abs_err:.3g} exceeds {target:.3g}",
                best_estimate=limit.value,
                abs_err=abs_err,
            )
        return Extrapolation(limit.value, abs_err, limit.order, evaluations)


@dataclass(frozen=True)
class Extrapolation:
    value: complex
    abs_err: float
    order: int
    evaluations: int = 0


@dataclass(frozen=True)
class WindowSpec:
    """Symmetric truncation of a Gaussian switching window."""

    truncation_radius: float
    tol: float = 1e-21

    def __post_init__(self):
        if not self.truncation_radius > 0:
            raise ContractError("truncation_radius must be positive")
        if not self.tol > 0:
            raise ContractError("tol must be positive")

    @property
    def bounds(self) -> tuple[float, float]:
        return -self.truncation_radius, self.truncation_radius

    def widened(self, factor: float = 2.0) -> WindowSpec:
        return WindowSpec(self.truncation_radius * factor, self.tol)


# e^{-x²/4} windows (sums and differences of two switching times).
HALF_WIDTH_WINDOW = WindowSpec(10.0 * math.sqrt(2.0))
# e^{-x²} and e^{-τ²/2} windows.
UNIT_WINDOW = WindowSpec(10.0)


def integrate_1d(
    f: Integrand,
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    *,
    rtol: float | None = None,
    points: Sequence[float] = (),
    max_intervals: int = MAX_INTERVALS,
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]``.

    Either end may be infinite. ``points`` are interior abscissae (peaks,
    kinks, regulated poles) that become interval edges. Convergence is
    reached when the error estimate drops below ``max(tol, rtol·|value|)``;
    ``rtol`` defaults to ``tol``.

    Raises:
        ContractError: if ``a >= b``.
        AccuracyError: if the subdivision budget runs out or ``f`` returns
            a non-finite value.
    """
    rtol = tol if rtol is None else rtol
    if not a < b:
        raise ContractError(f"integration bounds must satisfy a < b, got ({a}, {b})")

    inner = sorted({float(p) for p in points if a < p < b})
    value, abs_err, info = integrate.quad_vec(
        lambda x: complex(f(x)),
        a,
        b,
        epsabs=tol,
        epsrel=rtol,
        norm="max",
        limit=max_intervals,
        points=inner or None,
        full_output=True,
    )
    value = complex(value)
    abs_err = float(abs_err)
    if info.status == _NOT_A_NUMBER or not math.isfinite(abs_err):
        raise AccuracyError("integrand returned a non-finite value", best_estimate=None)
    if info.status == _SUBDIVISION_LIMIT:
        target = max(tol, rtol * abs(value))
        if abs_err > target:
            raise AccuracyError(
                f"{info.message} after {info.intervals.shape[0]} intervals "
                f"(estimated error {abs_err:.3g}, target {target:.3g})",
                best_estimate=value,
                abs_err=abs_err,
            )
    return QuadResult(value, abs_err, int(info.neval))


def integrate_iterated(
    inner: Callable[[float], QuadResult],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    *,
    rtol: float | None = None,
    points: Sequence[float] = (),
) -> QuadResult:
    """Outer adaptive integral of an inner integral evaluated node by node.

    The reported error is the outer estimate plus the largest inner
    estimate times the outer interval length.
    """
    worst_inner = 0.0
    inner_evaluations = 0

    def outer(x: float) -> complex:
        nonlocal worst_inner, inner_evaluations
        result = inner(float(x))
        worst_inner = max(worst_inner, result.abs_err)
        inner_evaluations += result.evaluations
        return result.value

    result = integrate_1d(outer, a, b, tol, rtol=rtol, points=points)
    return QuadResult(result.value, result.abs_err + worst_inner * (b - a), inner_evaluations)


def integrate_2d(
    f: Callable[[float, float], complex],
    window: WindowSpec,
    tol: float = DEFAULT_TOL,
    *,
    x_bounds: tuple[float, float] | None = None,
    y_bounds: tuple[float, float] | None = None,
    y_points: Callable[[float], Sequence[float]] | None = None,
) -> QuadResult:
    """Iterated integral of ``f(x, y)`` over the truncated window.

    Bounds default to ``window.bounds`` on both axes. ``y_points`` may
    supply inner breakpoints as a function of ``x``.
    """
    x_lo, x_hi = x_bounds or window.bounds
    y_lo, y_hi = y_bounds or window.bounds

    def inner(x: float) -> QuadResult:
        pts = y_points(x) if y_points is not None else ()
        return integrate_1d(lambda y: f(x, y), y_lo, y_hi, tol, points=pts)

    return integrate_iterated(inner, x_lo, x_hi, tol)


def _slope(u: Integrand, c: float) -> float:
    h = 1e-6 * max(1.0, abs(c))
    return float(np.real(u(c + h)) - np.real(u(c - h))) / (2.0 * h)


def _cauchy(h: Callable[[float], float], lo: float, hi: float, c: float, tol: float) -> tuple[float, float, int]:
    """PV ∫_lo^hi h(s)/(s - c) ds for a real, smooth ``h``."""
    out = integrate.quad(h, lo, hi, weight="cauchy", wvar=c, epsabs=tol, epsrel=tol, limit=PV_LIMIT, full_output=1)
    value, abs_err, info = out[:3]
    if len(out) > 3 and abs_err > max(tol, tol * abs(value)):
        raise AccuracyError(f"principal value at {c:.6g}: {out[3]}", best_estimate=value, abs_err=abs_err)
    return value, abs_err, info["neval"]


def integrate_pv_delta(
    g: Integrand,
    u: Integrand,
    u_roots: Sequence[float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    *,
    du: Integrand | None = None,
) -> QuadResult:
    """Evaluate ``lim_{ε→0+} ∫_a^b g(s) / (u(s) - iε) ds``.

    The limit is the principal value plus ``iπ Σ g(s*)/|u'(s*)|`` over the
    simple roots ``s*`` of ``u``. ``[a, b]`` is split at the midpoints
    between roots; on each piece ``g/u = h(s)/(s - c)`` with the smooth
    ``h = g·(s-c)/u``, which QUADPACK's Cauchy-weighted rule integrates
    directly. Complex ``g`` costs one call for each of the real and
    imaginary parts.

    Raises:
        ContractError: a bound is infinite, a root is not strictly inside
            ``(a, b)`` or two roots are closer than ``10·tol``.
        DegeneracyError: ``|u'(s*)|`` is below ``1e-10``.
        AccuracyError: the Cauchy-weighted rule misses ``tol``.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ContractError(f"principal-value bounds must be finite, got ({a}, {b})")
    roots = sorted(float(r) for r in u_roots)
    for r in roots:
        if not a < r < b:
            raise ContractError(f"root {r} is not bracketed by ({a}, {b})")
    for left, right in pairwise(roots):
        if right - left <= 10 * tol:
            raise ContractError(f"roots {left} and {right} are not separated")

    if not roots:
        return integrate_1d(lambda s: g(s) / u(s), a, b, tol)

    edges = [a, *((l + r) / 2.0 for l, r in pairwise(roots)), b]
    total = QuadResult(0j, 0.0, 0)
    for c, lo, hi in zip(roots, edges[:-1], edges[1:], strict=True):
        slope = float(np.real(du(c))) if du is not None else _slope(u, c)
        if abs(slope) < DEGENERATE_SLOPE:
            raise DegeneracyError(f"u'({c}) = {slope:.3g} is degenerate", best_estimate=None)
        raw = g(c)
        complex_valued = np.iscomplexobj(raw)
        g_c = complex(raw)
        h_c = g_c / slope

        # Both parts of a complex g sample the same abscissae.
        @functools.cache
        def h(s: float, c: float = c, h_c: complex = h_c) -> complex:
            u_s = float(u(s).real)
            if s == c or u_s == 0.0:
                return h_c
            return complex(g(s)) * (s - c) / u_s

        re, re_err, evaluations = _cauchy(lambda s, h=h: h(s).real, lo, hi, c, tol)
        im, im_err = 0.0, 0.0
        if complex_valued:
            im, im_err, im_evaluations = _cauchy(lambda s, h=h: h(s).imag, lo, hi, c, tol)
            evaluations += im_evaluations
        principal = QuadResult(complex(re, im), re_err + im_err, evaluations)

        delta = QuadResult(1j * math.pi * g_c / abs(slope), 0.0, 1)
        total = total + principal + delta
        logger.debug("PV root %.6g: principal=%s delta=%s", c, principal.value, delta.value)
    return total


def _lagrange_weights_at_zero(eps: Sequence[float]) -> np.ndarray:
    x = np.asarray(eps, dtype=float)
    weights = np.ones(x.size)
    for i in range(x.size):
        for j in range(x.size):
            if i != j:
                weights[i] *= (0.0 - x[j]) / (x[i] - x[j])
    return weights


def _neville_at_zero(eps: Sequence[float], values: Sequence[complex]) -> complex:
    x = list(eps)
    p = [complex(v) for v in values]
    n = len(x)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (-x[i + m] * p[i] + x[i] * p[i + 1]) / (x[i] - x[i + m])
    return p[0]


def extrapolate_eps(samples: Sequence[tuple[float, complex]], order: int | None = None) -> Extrapolation:
    """Polynomial extrapolation of regulated samples to ε = 0.

    Uses the ``order + 1`` samples with the smallest ε (``order`` defaults
    to ``len(samples) - 1``). The error proxy is the distance to the
    extrapolant of the preceding window, or to the one-order-lower
    extrapolant when no preceding window exists.

    Raises:
        ContractError: fewer than two samples, fewer than ``order + 1``,
            or ε not strictly descending.
    """
    if len(samples) < 2:
        raise ContractError("at least two samples are needed to extrapolate")
    order = len(samples) - 1 if order is None else order
    if order < 1 or len(samples) < order + 1:
        raise ContractError(f"{len(samples)} samples cannot support order {order} extrapolation")
    eps = [float(e) for e, _ in samples]
    values = [complex(v) for _, v in samples]
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:], strict=False)):
        raise ContractError("regulator values must be positive and strictly descending")

    k = order + 1
    best = _neville_at_zero(eps[-k:], values[-k:])
    if len(samples) > k:
        previous = _neville_at_zero(eps[-k - 1:-1], values[-k - 1:-1])
    else:
        previous = _neville_at_zero(eps[-k + 1:], values[-k + 1:])
    err = abs(best - previous)
    logger.debug("ε-extrapolation order %d: %s (discrepancy %.3g)", order, best, err)
    return Extrapolation(best, err, order, len(samples))
