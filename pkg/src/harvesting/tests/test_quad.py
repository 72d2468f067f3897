"""Adaptive quadrature, principal value plus delta, and ε-extrapolation."""

import math

import numpy as np
import pytest
from scipy import special

from harvesting.exceptions import AccuracyError, ContractError, DegeneracyError
from harvesting.quad import (
    HALF_WIDTH_WINDOW,
    UNIT_WINDOW,
    QuadResult,
    RegulatorPolicy,
    WindowSpec,
    extrapolate_eps,
    integrate_1d,
    integrate_2d,
    integrate_iterated,
    integrate_pv_delta,
)

SQRT_PI = math.sqrt(math.pi)

# -----------------------------------------------------------------------------
# Adaptive quadrature
# -----------------------------------------------------------------------------


class TestIntegrate1d:
    def test_gaussian_on_the_unit_window(self):
        result = integrate_1d(lambda x: np.exp(-x * x), *UNIT_WINDOW.bounds, 1e-12)
        assert result.value.real == pytest.approx(SQRT_PI, abs=1e-11)
        assert result.abs_err <= 1e-11
        assert result.evaluations > 0

    def test_full_line(self):
        """∫ e^{-x²/4} dx = 2√π."""
        result = integrate_1d(lambda x: np.exp(-x * x / 4), -math.inf, math.inf, 1e-11)
        assert result.value.real == pytest.approx(2 * SQRT_PI, abs=1e-9)

    def test_half_line(self):
        result = integrate_1d(lambda x: np.exp(-x), 0.0, math.inf, 1e-12)
        assert result.value.real == pytest.approx(1.0, abs=1e-10)

    def test_oscillatory_gaussian_on_the_half_width_window(self):
        result = integrate_1d(lambda x: np.exp(-x * x / 4) * np.cos(5 * x), *HALF_WIDTH_WINDOW.bounds, 1e-13)
        assert result.value.real == pytest.approx(2 * SQRT_PI * math.exp(-25.0), abs=1e-11)

    def test_complex_oscillatory_gaussian(self):
        """∫ e^{-x²} e^{5ix} dx = √π e^{-25/4}; the odd part cancels."""
        result = integrate_1d(lambda x: np.exp(-x * x + 5j * x), *UNIT_WINDOW.bounds, 1e-12)
        assert result.value.real == pytest.approx(SQRT_PI * math.exp(-6.25), abs=1e-11)
        assert result.value.imag == pytest.approx(0.0, abs=1e-11)

    def test_widening_the_window_does_not_move_the_value(self):
        def f(x):
            return np.exp(-x * x) * np.cos(2 * x)

        narrow = integrate_1d(f, *UNIT_WINDOW.bounds, 1e-12)
        wide = integrate_1d(f, *UNIT_WINDOW.widened().bounds, 1e-12, points=UNIT_WINDOW.bounds)
        assert wide.value == pytest.approx(narrow.value, abs=1e-11)

    def test_linearity(self):
        def f(x):
            return np.exp(-x * x) * np.sin(x + 0.3)

        def g(x):
            return 1.0 / (1.0 + x * x)

        lo, hi = -3.0, 4.0
        combined = integrate_1d(lambda x: 2.0 * f(x) - 3j * g(x), lo, hi, 1e-12)
        separate = 2.0 * integrate_1d(f, lo, hi, 1e-12).value - 3j * integrate_1d(g, lo, hi, 1e-12).value
        assert combined.value == pytest.approx(separate, abs=1e-10)

    def test_breakpoints_handle_a_kink(self):
        result = integrate_1d(lambda x: np.abs(x - 0.3), 0.0, 1.0, 1e-12, points=[0.3])
        assert result.value.real == pytest.approx(0.29, abs=1e-12)

    def test_complex_integrand(self):
        result = integrate_1d(lambda x: np.exp(1j * x), 0.0, math.pi, 1e-12)
        assert result.value == pytest.approx(2j, abs=1e-11)

    def test_reversed_bounds_are_rejected(self):
        with pytest.raises(ContractError):
            integrate_1d(lambda x: x, 1.0, 1.0)

    def test_budget_exhaustion_keeps_the_best_estimate(self):
        with pytest.raises(AccuracyError) as excinfo:
            integrate_1d(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, 1e-14, max_intervals=10)
        assert excinfo.value.best_estimate is not None
        assert excinfo.value.abs_err > 0

    def test_non_finite_integrand(self):
        with pytest.raises(AccuracyError):
            integrate_1d(lambda x: math.nan, 0.0, 1.0)


class TestIteratedIntegrals:
    def test_product_on_the_unit_square(self):
        def inner(x):
            return integrate_1d(lambda y: x * y, 0.0, 1.0, 1e-13)

        result = integrate_iterated(inner, 0.0, 1.0, 1e-12)
        assert result.value.real == pytest.approx(0.25, abs=1e-12)
        assert result.evaluations > 0

    def test_two_dimensional_gaussian(self):
        result = integrate_2d(lambda x, y: np.exp(-x * x - y * y), UNIT_WINDOW, 1e-11)
        assert result.value.real == pytest.approx(math.pi, abs=1e-9)

    def test_explicit_bounds_override_the_window(self):
        result = integrate_2d(lambda x, y: np.ones_like(y), UNIT_WINDOW, 1e-12, x_bounds=(0.0, 2.0), y_bounds=(0.0, 3.0))
        assert result.value.real == pytest.approx(6.0, abs=1e-10)


# -----------------------------------------------------------------------------
# Windows and results
# -----------------------------------------------------------------------------


class TestWindowSpec:
    def test_standard_windows(self):
        assert HALF_WIDTH_WINDOW.bounds == (-10 * math.sqrt(2), 10 * math.sqrt(2))
        assert UNIT_WINDOW.bounds == (-10.0, 10.0)

    def test_widened(self):
        assert UNIT_WINDOW.widened().truncation_radius == 20.0

    def test_invalid_radius(self):
        with pytest.raises(ContractError):
            WindowSpec(0.0)


class TestQuadResult:
    def test_addition_accumulates_errors(self):
        total = QuadResult(1.0, 1e-10, 15) + QuadResult(2j, 2e-10, 30)
        assert total == QuadResult(1 + 2j, 3e-10, 45)

    def test_scaling_uses_the_modulus(self):
        scaled = QuadResult(1.0, 1e-10, 15).scaled(-2j)
        assert scaled.value == -2j
        assert scaled.abs_err == pytest.approx(2e-10)


# -----------------------------------------------------------------------------
# Principal value plus delta
# -----------------------------------------------------------------------------


class TestPvDelta:
    def test_simple_pole(self):
        """∫_{-1}^{2} ds/(s - iε) → ln 2 + iπ."""
        result = integrate_pv_delta(np.ones_like, lambda s: s, [0.0], -1.0, 2.0, 1e-12)
        assert result.value == pytest.approx(math.log(2) + 1j * math.pi, abs=1e-10)

    @pytest.mark.parametrize("c", [-0.8, 0.5, 2.0])
    def test_gaussian_hilbert_transform(self, c):
        """PV ∫ e^{-s²}/(s - c) ds = -2√π D(c); the delta piece is iπ e^{-c²}."""
        result = integrate_pv_delta(lambda s: np.exp(-s * s), lambda s: s - c, [c], -8.0, 8.0, 1e-12)
        assert result.value.real == pytest.approx(-2 * SQRT_PI * special.dawsn(c), abs=1e-10)
        assert result.value.imag == pytest.approx(math.pi * math.exp(-c * c), abs=1e-12)

    def test_nonlinear_denominator(self):
        """∫_0^3 ds/sinh(s - 1) with its pole at s = 1."""
        result = integrate_pv_delta(np.ones_like, lambda s: np.sinh(s - 1.0), [1.0], 0.0, 3.0, 1e-12)
        expected = math.log(math.tanh(1.0) / math.tanh(0.5))
        assert result.value.real == pytest.approx(expected, abs=1e-9)
        assert result.value.imag == pytest.approx(math.pi, abs=1e-9)

    def test_analytic_derivative_matches_the_numerical_slope(self):
        numeric = integrate_pv_delta(np.ones_like, lambda s: np.sinh(s - 1.0), [1.0], 0.0, 3.0, 1e-12)
        exact = integrate_pv_delta(
            np.ones_like, lambda s: np.sinh(s - 1.0), [1.0], 0.0, 3.0, 1e-12, du=lambda s: np.cosh(s - 1.0)
        )
        assert exact.value == pytest.approx(numeric.value, abs=1e-9)

    def test_two_roots(self):
        """PV ∫_{-3}^{3} ds/(s² - 1) = -ln 2, delta pieces iπ/2 each."""
        result = integrate_pv_delta(np.ones_like, lambda s: s * s - 1.0, [-1.0, 1.0], -3.0, 3.0, 1e-12)
        assert result.value == pytest.approx(-math.log(2) + 1j * math.pi, abs=1e-9)

    def test_root_next_to_an_endpoint(self):
        c = 1e-8
        result = integrate_pv_delta(np.ones_like, lambda s: s - c, [c], 0.0, 1.0, 1e-12)
        assert result.value.real == pytest.approx(math.log((1 - c) / c), rel=1e-9)
        assert result.value.imag == pytest.approx(math.pi)

    def test_exponential_against_the_exponential_integral(self):
        """PV ∫_{-2}^{2} e^s/s ds = Ei(2) - Ei(-2)."""
        result = integrate_pv_delta(np.exp, lambda s: s, [0.0], -2.0, 2.0, 1e-12)
        assert result.value.real == pytest.approx(special.expi(2.0) - special.expi(-2.0), abs=1e-10)
        assert result.value.imag == pytest.approx(math.pi, abs=1e-12)
        assert result.evaluations > 0

    @pytest.mark.parametrize(
        "g",
        [lambda s: s + 0.5, np.exp, lambda s: np.exp(1j * s)],
        ids=["linear", "exponential", "phase"],
    )
    def test_agrees_with_the_regulated_limit(self, g, fine_regulator):
        pv = integrate_pv_delta(g, lambda s: s, [0.0], -1.0, 2.0, 1e-12)
        regulated = fine_regulator.limit(
            lambda eps: integrate_1d(lambda s: g(s) / (s - 1j * eps), -1.0, 2.0, 1e-12, points=[0.0])
        )
        assert regulated.value == pytest.approx(pv.value, abs=1e-4)

    def test_infinite_bounds_are_rejected(self):
        with pytest.raises(ContractError):
            integrate_pv_delta(np.ones_like, lambda s: s, [0.0], -math.inf, 1.0)

    def test_root_outside_the_interval(self):
        with pytest.raises(ContractError):
            integrate_pv_delta(np.ones_like, lambda s: s - 5.0, [5.0], 0.0, 1.0)

    def test_roots_too_close(self):
        with pytest.raises(ContractError):
            integrate_pv_delta(np.ones_like, lambda s: s, [0.5, 0.5 + 1e-12], 0.0, 1.0, 1e-10)

    def test_double_root_is_degenerate(self):
        with pytest.raises(DegeneracyError):
            integrate_pv_delta(np.ones_like, lambda s: (s - 0.5) ** 2, [0.5], 0.0, 1.0)


# -----------------------------------------------------------------------------
# ε-extrapolation
# -----------------------------------------------------------------------------


class TestExtrapolateEps:
    def test_linear_samples(self):
        result = extrapolate_eps([(0.1, 2.3), (0.05, 2.15)])
        assert result.value == pytest.approx(2.0, abs=1e-14)
        assert result.order == 1

    def test_quadratic_samples_are_exact_at_order_two(self):
        samples = [(eps, 1 + eps + eps * eps) for eps in (0.4, 0.2, 0.1)]
        assert extrapolate_eps(samples).value == pytest.approx(1.0, abs=1e-13)

    def test_uses_the_smallest_regulators(self):
        samples = [(1.0, 100.0), (0.1, 1.1), (0.05, 1.05)]
        result = extrapolate_eps(samples, order=1)
        assert result.value == pytest.approx(1.0, abs=1e-13)
        assert result.abs_err > 0

    def test_complex_samples(self):
        samples = [(eps, (1 + 2j) + 3j * eps) for eps in (0.02, 0.01)]
        assert extrapolate_eps(samples).value == pytest.approx(1 + 2j, abs=1e-13)

    def test_single_sample_is_rejected(self):
        with pytest.raises(ContractError):
            extrapolate_eps([(0.1, 1.0)])

    def test_ascending_regulators_are_rejected(self):
        with pytest.raises(ContractError):
            extrapolate_eps([(0.05, 1.0), (0.1, 1.1)])

    def test_order_beyond_the_samples(self):
        with pytest.raises(ContractError):
            extrapolate_eps([(0.1, 1.0), (0.05, 1.0)], order=2)


class TestRegulatorPolicy:
    def test_limit_extrapolates_a_polynomial_exactly(self):
        policy = RegulatorPolicy((0.4, 0.2, 0.1), extrapolation_order=2)
        limit = policy.limit(lambda eps: QuadResult(1 + 2 * eps + eps * eps, 1e-15, 15))
        assert limit.value == pytest.approx(1.0, abs=1e-12)
        assert limit.evaluations == 45

    def test_sample_errors_are_amplified(self):
        policy = RegulatorPolicy((0.2, 0.1), extrapolation_order=1)
        limit = policy.limit(lambda eps: QuadResult(1 + eps, 1e-6, 15))
        # Weights at zero for (0.2, 0.1) are (-1, 2).
        assert limit.abs_err >= 3e-6

    def test_ascending_sequence(self):
        with pytest.raises(ContractError):
            RegulatorPolicy((1e-3, 2e-3, 4e-3))

    def test_too_few_values_for_the_order(self):
        with pytest.raises(ContractError):
            RegulatorPolicy((4e-3, 2e-3, 1e-3), extrapolation_order=3)

    def test_order_zero(self):
        with pytest.raises(ContractError):
            RegulatorPolicy((4e-3, 2e-3), extrapolation_order=0)

    def test_non_positive_target_is_rejected(self):
        with pytest.raises(ContractError):
            RegulatorPolicy((4e-3, 2e-3), extrapolation_order=1, target_rtol=0.0)

    def test_missed_target_keeps_the_best_estimate(self):
        policy = RegulatorPolicy((0.2, 0.1), extrapolation_order=1)
        with pytest.raises(AccuracyError) as excinfo:
            policy.limit(lambda eps: QuadResult(1 + eps, 1e-2, 15))
        assert excinfo.value.best_estimate == pytest.approx(1.0)
        assert excinfo.value.abs_err >= 3e-2

    def test_absolute_tolerance_widens_the_target(self):
        policy = RegulatorPolicy((0.2, 0.1), extrapolation_order=1)
        limit = policy.limit(lambda eps: QuadResult(1 + eps, 1e-2, 15), tol=0.1)
        assert limit.value == pytest.approx(1.0)
