"""Closed-form approximants against the numerical evaluators."""

import math
import warnings

import numpy as np
import pytest

from harvesting.asymptotics import Regime, RegimeWarning, approx_p, approx_x, sign_criterion
from harvesting.exceptions import ContractError, DomainError
from harvesting.harvest import DetectorParams, ScenarioKind, transition_probability, x_accelerated, x_thermal, x_vacuum_static

PARALLEL = ScenarioKind.PARALLEL_ACC
THERMAL = ScenarioKind.THERMAL_STATIC


def _silently(fn, *args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        return fn(*args)


# -----------------------------------------------------------------------------
# Limits and guards
# -----------------------------------------------------------------------------


class TestZeroRateLimits:
    @pytest.mark.parametrize("kind", [PARALLEL, THERMAL])
    def test_small_rate_reduces_to_the_vacuum(self, unit_gap, kind):
        assert approx_x(Regime.SMALL_RATE, kind, unit_gap, 0.0, 1.0) == x_vacuum_static(unit_gap, 1.0)

    def test_small_temperature_probability_reduces_to_the_vacuum(self, unit_gap):
        assert approx_p(unit_gap, 0.0) == transition_probability(unit_gap, 0.0)

    def test_sign_criterion(self):
        assert sign_criterion(DetectorParams(1.0)) == 1.0
        assert sign_criterion(DetectorParams(0.0)) == -1.0
        assert sign_criterion(DetectorParams(1 / math.sqrt(2))) == pytest.approx(0.0, abs=1e-15)


class TestRegimeGuards:
    def test_warns_outside_the_regime(self, unit_gap):
        with pytest.warns(RegimeWarning, match="small_rate"):
            approx_x(Regime.SMALL_RATE, PARALLEL, unit_gap, 3.0, 1.0)

    def test_silent_inside_the_regime(self, unit_gap):
        with warnings.catch_warnings():
            warnings.simplefilter("error", RegimeWarning)
            approx_x(Regime.SMALL_RATE_SMALL_L, PARALLEL, unit_gap, 0.1, 0.1)
            approx_x(Regime.LARGE_AL, THERMAL, DetectorParams(0.1), 2 / (2 * math.pi), 10.0)
            approx_p(unit_gap, 0.1)

    def test_large_al_needs_a_large_separation(self):
        assert Regime.LARGE_AL.holds(0.1, 2.0, 10.0)
        assert not Regime.LARGE_AL.holds(0.1, 2.0, 1.0)
        assert not Regime.LARGE_AL.holds(1.0, 2.0, 10.0)

    def test_non_positive_separation(self, unit_gap):
        with pytest.raises(DomainError):
            approx_x(Regime.SMALL_RATE, THERMAL, unit_gap, 0.1, 0.0)

    def test_probability_regime_has_no_correlation_approximant(self, unit_gap):
        with pytest.raises(ContractError):
            approx_x(Regime.SMALL_RATE_P, THERMAL, unit_gap, 0.1, 1.0)

    def test_only_parallel_and_thermal_have_approximants(self, unit_gap):
        with pytest.raises(ContractError):
            approx_x(Regime.SMALL_RATE, ScenarioKind.ANTIPARALLEL_ACC, unit_gap, 0.1, 1.0)

    def test_large_al_needs_a_rate(self, unit_gap):
        with pytest.raises(DomainError):
            _silently(approx_x, Regime.LARGE_AL, THERMAL, unit_gap, 0.0, 10.0)


# -----------------------------------------------------------------------------
# Agreement with the numerical evaluators
# -----------------------------------------------------------------------------


class TestSmallRate:
    def test_probability_residual_is_quartic(self, unit_gap):
        """Halving T cuts the residual of the T² expansion about sixteenfold."""

        def residual(T):
            return abs(transition_probability(unit_gap, 2 * math.pi * T, 1e-13) - approx_p(unit_gap, T))

        ratio = residual(0.1) / residual(0.05)
        assert 10 <= ratio <= 22

    def test_thermal_correlation_residual_is_quartic(self, unit_gap):
        def residual(T):
            return abs(x_thermal(unit_gap, T, 1.0, 1e-12) - approx_x(Regime.SMALL_RATE, THERMAL, unit_gap, T, 1.0))

        ratio = residual(0.1) / residual(0.05)
        assert 10 <= ratio <= 22

    def test_thermal_shift_does_not_depend_on_the_separation(self, unit_gap):
        T = 0.05
        for L in (0.5, 1.0, 2.0):
            shift = approx_x(Regime.SMALL_RATE, THERMAL, unit_gap, T, L) - x_vacuum_static(unit_gap, L)
            assert shift == pytest.approx(-math.pi * T * T * math.exp(-1.0) / 6, rel=1e-12)

    @pytest.mark.slow
    def test_accelerated_correlation_residual_is_quartic(self, unit_gap):
        def residual(a):
            return abs(x_accelerated(unit_gap, a, 1.0, 1e-11) - approx_x(Regime.SMALL_RATE, PARALLEL, unit_gap, a, 1.0))

        ratio = residual(0.2) / residual(0.1)
        assert 10 <= ratio <= 22


class TestSmallRateSmallSeparation:
    @pytest.mark.parametrize("L", [0.05, 0.1])
    @pytest.mark.parametrize("gap", [0.5, 1.0])
    def test_thermal(self, L, gap):
        det = DetectorParams(gap)
        T = 0.05 / (2 * math.pi)
        numeric = abs(x_thermal(det, T, L, 1e-11))
        assert approx_x(Regime.SMALL_RATE_SMALL_L, THERMAL, det, T, L) == pytest.approx(numeric, rel=1e-2)

    @pytest.mark.slow
    @pytest.mark.parametrize("L", [0.05, 0.1])
    @pytest.mark.parametrize("gap", [0.5, 1.0])
    def test_accelerated(self, L, gap):
        det = DetectorParams(gap)
        numeric = abs(x_accelerated(det, 0.05, L, 1e-10))
        assert approx_x(Regime.SMALL_RATE_SMALL_L, PARALLEL, det, 0.05, L) == pytest.approx(numeric, rel=1e-2)

    @pytest.mark.slow
    @pytest.mark.parametrize("gap, sign", [(0.6, -1), (0.8, 1)])
    def test_sign_criterion_orders_the_correlations(self, gap, sign):
        """2Ω² - 1 predicts whether acceleration or the bath correlates more at small a and L."""
        det = DetectorParams(gap)
        a, L = 0.05, 0.1
        difference = abs(x_accelerated(det, a, L, 1e-11)) - abs(x_thermal(det, a / (2 * math.pi), L, 1e-11))
        assert math.copysign(1.0, difference) == sign
        assert math.copysign(1.0, sign_criterion(det)) == sign


class TestLargeSeparation:
    def test_thermal_tail(self):
        det = DetectorParams(0.1)
        T = 2 / (2 * math.pi)
        numeric = abs(x_thermal(det, T, 10.0))
        assert approx_x(Regime.LARGE_AL, THERMAL, det, T, 10.0) == pytest.approx(numeric, rel=0.15)

    def test_accelerated_approximant_falls_as_inverse_square(self):
        det = DetectorParams(0.1)
        L = np.array([1e3, 2e3, 4e3])
        values = [approx_x(Regime.LARGE_AL, PARALLEL, det, 2.0, float(x)) for x in L]
        slope = np.polyfit(np.log(L), np.log(values), 1)[0]
        assert -2.1 <= slope <= -1.9

    @pytest.mark.slow
    def test_decay_exponents(self):
        """Accelerated correlations fall off faster than thermal ones at large aL."""
        det = DetectorParams(0.1)
        a = 2.0
        L = np.array([8.0, 10.0, 12.0, 14.0, 16.0])
        acc = [abs(x_accelerated(det, a, float(x), 1e-11)) for x in L]
        th = [abs(x_thermal(det, a / (2 * math.pi), float(x), 1e-11)) for x in L]
        acc_slope = np.polyfit(np.log(L), np.log(acc), 1)[0]
        th_slope = np.polyfit(np.log(L), np.log(th), 1)[0]
        assert -2.6 <= acc_slope <= -1.6
        assert -1.4 <= th_slope <= -0.7

    @pytest.mark.slow
    def test_accelerated_correlations_lose_ground_with_distance(self, unit_gap):
        a = 1.0
        L = (8.0, 12.0, 16.0)
        acc = [abs(x_accelerated(unit_gap, a, x, 1e-11)) for x in L]
        th = [abs(x_thermal(unit_gap, a / (2 * math.pi), x, 1e-11)) for x in L]
        assert max(v * x * x for v, x in zip(acc, L, strict=True)) < 10 * min(v * x * x for v, x in zip(acc, L, strict=True))
        assert max(v * x for v, x in zip(th, L, strict=True)) < 10 * min(v * x for v, x in zip(th, L, strict=True))
        ratios = [p / q for p, q in zip(acc, th, strict=True)]
        assert ratios[0] > ratios[1] > ratios[2]
