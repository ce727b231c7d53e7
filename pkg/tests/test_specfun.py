"""Tests for the incomplete-beta kernel.

Reference values were frozen from 40-digit mpmath evaluations; the quadrature
oracle integrates the beta density directly (after a sin^2 substitution that
removes the endpoint singularities) so it shares no code with the
continued-fraction route under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from spherechord.errors import ConvergenceError, DomainError
from spherechord.specfun import (
    DEFAULT_TOL,
    ToleranceConfig,
    inv_reg_inc_beta,
    inv_reg_inc_beta_array,
    log_beta,
    log_gamma,
    reg_inc_beta,
    reg_inc_beta_array,
    reg_inc_beta_step,
)

GRID_SHAPES = [0.5, 1.0, 1.5, 7.5, 127.5]


def beta_quad_oracle(x: float, a: float, b: float) -> float:
    """Adaptive quadrature of the regularized beta integrand.

    Substituting t = sin^2(theta) turns t^(a-1)(1-t)^(b-1) dt into
    2 sin^(2a-1) cos^(2b-1) dtheta, which is bounded for a,b >= 1/2.
    """
    def integrand(theta: float) -> float:
        s, c = math.sin(theta), math.cos(theta)
        return 2.0 * s ** (2.0 * a - 1.0) * c ** (2.0 * b - 1.0)

    upper = math.asin(math.sqrt(x))
    val, _ = quad(integrand, 0.0, upper, limit=200)
    return val * math.exp(-log_beta(a, b))


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(2.0) == 0.0
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-15)
        assert log_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)
        with pytest.raises(DomainError):
            log_gamma(-3.5)


class TestLogBeta:
    # mpmath.log(mp.beta(a, b)) at 40 digits
    FROZEN = [
        (0.5, 0.5, 1.1447298858494001741),
        (2.5, 3.5, -3.3018352699620526098),
        (127.5, 0.5, -1.8507128497304907738),
        (2047.5, 0.5, -3.2397614148784688705),
        (524287.5, 0.5, -6.0125325571385883),
        (32767.5, 32767.5, -45429.333558282522584),
    ]

    @pytest.mark.parametrize("a,b,expected", FROZEN)
    def test_frozen_values(self, a, b, expected):
        assert log_beta(a, b) == pytest.approx(expected, rel=1e-13)

    def test_symmetric_in_arguments(self):
        assert log_beta(3.25, 0.5) == log_beta(0.5, 3.25)

    def test_rejects_nonpositive_shapes(self):
        with pytest.raises(DomainError):
            log_beta(0.0, 1.0)
        with pytest.raises(DomainError):
            log_beta(1.0, -2.0)


class TestRegIncBeta:
    def test_endpoints_exact(self):
        for a, b in [(0.5, 0.5), (1.0, 0.5), (63.5, 0.5), (7.5, 7.5)]:
            assert reg_inc_beta(0.0, a, b) == 0.0
            assert reg_inc_beta(1.0, a, b) == 1.0

    def test_arcsin_closed_form(self):
        # I_x(1/2, 1/2) = (2/pi) arcsin(sqrt(x)); at x = 3/4 that is 2/3
        assert reg_inc_beta(0.75, 0.5, 0.5) == pytest.approx(2.0 / 3.0, abs=1e-12)
        for x in (0.1, 0.37, 0.9):
            expected = 2.0 / math.pi * math.asin(math.sqrt(x))
            assert reg_inc_beta(x, 0.5, 0.5) == pytest.approx(expected, abs=1e-13)

    def test_a_one_closed_form(self):
        # I_x(1, 1/2) = 1 - sqrt(1-x)
        assert reg_inc_beta(0.75, 1.0, 0.5) == pytest.approx(0.5, abs=1e-13)
        for x in (0.02, 0.5, 0.96):
            assert reg_inc_beta(x, 1.0, 0.5) == pytest.approx(
                1.0 - math.sqrt(1.0 - x), abs=1e-13
            )

    # mpmath.betainc(a, b, 0, x, regularized=True) at 40 digits
    FROZEN = [
        (0.6217, 0.5, 0.5, 0.57826276889681260977),
        (0.6217, 7.5, 0.5, 0.0085942512034971030576),
        (0.6217, 127.5, 0.5, 3.8739335227120184416e-28),
        (0.3, 1.5, 1.5, 0.25231578773434546005),
        (0.9, 20.0, 20.0, 0.99999999989660880556),
        (0.1, 127.5, 0.5, 1.6631651528840068166e-129),
        (0.999, 2047.5, 0.5, 0.042970845963149044151),
    ]

    @pytest.mark.parametrize("x,a,b,expected", FROZEN)
    def test_frozen_values(self, x, a, b, expected):
        got = reg_inc_beta(x, a, b)
        assert got == pytest.approx(expected, rel=1e-11, abs=1e-14)

    @pytest.mark.parametrize("a", [0.5, 1.0, 1.5, 7.5, 20.0])
    @pytest.mark.parametrize("b", [0.5, 1.0, 7.5, 20.0])
    def test_quadrature_oracle(self, a, b):
        for x in (0.05, 0.3, 0.6217, 0.9):
            assert reg_inc_beta(x, a, b) == pytest.approx(
                beta_quad_oracle(x, a, b), abs=1e-9
            )

    @pytest.mark.parametrize("a", GRID_SHAPES)
    @pytest.mark.parametrize("b", GRID_SHAPES)
    def test_monotone_on_grid(self, a, b):
        xs = np.linspace(0.0, 1.0, 1000)
        vals = reg_inc_beta_array(xs, a, b)
        assert np.all(np.diff(vals) >= 0.0)
        assert vals[0] == 0.0 and vals[-1] == 1.0

    @pytest.mark.parametrize("a", GRID_SHAPES)
    @pytest.mark.parametrize("b", GRID_SHAPES)
    def test_reflection_symmetry(self, a, b):
        xs = np.linspace(0.0, 1.0, 1000)
        lhs = reg_inc_beta_array(xs, a, b)
        rhs = 1.0 - reg_inc_beta_array(1.0 - xs, b, a)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            reg_inc_beta(-0.1, 1.0, 1.0)
        with pytest.raises(DomainError):
            reg_inc_beta(1.5, 1.0, 1.0)
        with pytest.raises(DomainError):
            reg_inc_beta(float("nan"), 1.0, 1.0)
        with pytest.raises(DomainError):
            reg_inc_beta(0.5, 0.0, 1.0)

    def test_convergence_error_when_iterations_exhausted(self):
        tight = ToleranceConfig(rel_tol=1e-12, abs_tol=1e-14, max_iter=2)
        with pytest.raises(ConvergenceError):
            reg_inc_beta(0.5, 0.5, 0.5, tight)

    @given(
        x=st.floats(min_value=0.0, max_value=1.0),
        a=st.floats(min_value=0.5, max_value=200.0),
        b=st.floats(min_value=0.5, max_value=200.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_range_property(self, x, a, b):
        assert 0.0 <= reg_inc_beta(x, a, b) <= 1.0

    @given(
        # 1-x in the test expression itself rounds at ulp(1)/2; below 1e-4
        # that rounding alone exceeds the 1e-12 budget when a = 1/2
        x=st.floats(min_value=1e-4, max_value=1.0 - 1e-4),
        a=st.floats(min_value=0.5, max_value=200.0),
        b=st.floats(min_value=0.5, max_value=200.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_symmetry_property(self, x, a, b):
        v = reg_inc_beta(x, a, b)
        mirrored = 1.0 - reg_inc_beta(1.0 - x, b, a)
        assert abs(v - mirrored) <= 1e-12


class TestInverse:
    def test_endpoints_exact(self):
        assert inv_reg_inc_beta(0.0, 3.5, 0.5) == 0.0
        assert inv_reg_inc_beta(1.0, 3.5, 0.5) == 1.0

    def test_arcsin_inverse(self):
        assert inv_reg_inc_beta(2.0 / 3.0, 0.5, 0.5) == pytest.approx(0.75, abs=1e-12)

    def test_a_one_inverse(self):
        # solve 1 - sqrt(1-x) = 1/2
        assert inv_reg_inc_beta(0.5, 1.0, 0.5) == pytest.approx(0.75, abs=1e-13)

    @pytest.mark.parametrize("a", GRID_SHAPES)
    @pytest.mark.parametrize("b", GRID_SHAPES)
    def test_round_trip(self, a, b):
        log_b = log_beta(a, b)
        for p in (1e-6, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999999):
            x = inv_reg_inc_beta(p, a, b)
            residual = abs(reg_inc_beta(x, a, b) - p)
            # Where the solution abuts an endpoint the spacing of doubles
            # limits how closely p can be matched: one ulp of x moves the
            # integral by pdf(x)*spacing(x). Allow that floor.
            floor = 0.0
            if 0.0 < x < 1.0:
                log_pdf = (
                    (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - log_b
                )
                if log_pdf < 700.0:
                    floor = 4.0 * math.exp(log_pdf) * np.spacing(x)
            assert residual <= max(1e-10, floor)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            inv_reg_inc_beta(-0.2, 1.0, 1.0)
        with pytest.raises(DomainError):
            inv_reg_inc_beta(1.2, 1.0, 1.0)

    @given(p=st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
    @settings(max_examples=100, deadline=None)
    def test_residual_property_moderate_shapes(self, p):
        x = inv_reg_inc_beta(p, 1.5, 0.5)
        assert abs(reg_inc_beta(x, 1.5, 0.5) - p) <= 1e-10


class TestShapeStep:
    def test_x_zero_and_one_are_identity(self):
        assert reg_inc_beta_step(0.42, 0.0, 1.5, 0.5) == 0.42
        assert reg_inc_beta_step(0.42, 1.0, 1.5, 0.5) == 0.42

    def test_matches_direct_evaluation(self):
        # I_{0.75}(1.5, 0.5), frozen from mpmath
        stepped = reg_inc_beta_step(2.0 / 3.0, 0.75, 0.5, 0.5)
        assert stepped == pytest.approx(0.39100221895577064191, abs=1e-12)
        assert stepped == pytest.approx(reg_inc_beta(0.75, 1.5, 0.5), abs=1e-10)

    @pytest.mark.parametrize("x", [0.12, 0.37, 0.75, 0.97])
    @pytest.mark.parametrize("b", [0.5, 1.5])
    def test_five_consecutive_steps(self, x, b):
        a = 0.5
        current = reg_inc_beta(x, a, b)
        for _ in range(5):
            current = reg_inc_beta_step(current, x, a, b)
            a += 1.0
            assert current == pytest.approx(reg_inc_beta(x, a, b), abs=1e-10)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            reg_inc_beta_step(1.7, 0.5, 1.0, 1.0)
        with pytest.raises(DomainError):
            reg_inc_beta_step(0.5, -0.5, 1.0, 1.0)


class TestToleranceConfig:
    def test_defaults(self):
        assert DEFAULT_TOL.rel_tol == 1e-12
        assert DEFAULT_TOL.abs_tol == 1e-14
        assert DEFAULT_TOL.max_iter == 500

    def test_validation(self):
        with pytest.raises(DomainError):
            ToleranceConfig(rel_tol=0.0)
        with pytest.raises(DomainError):
            ToleranceConfig(abs_tol=-1e-9)
        with pytest.raises(DomainError):
            ToleranceConfig(max_iter=0)

    def test_frozen(self):
        with pytest.raises(AttributeError):
            DEFAULT_TOL.rel_tol = 1e-6  # type: ignore[misc]


class TestArrayCompanions:
    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (1.5, 0.5), (15.5, 0.5), (127.5, 0.5)])
    def test_forward_matches_scalar(self, a, b):
        xs = np.random.default_rng(7).random(400)
        vec = reg_inc_beta_array(xs, a, b)
        sca = np.array([reg_inc_beta(float(x), a, b) for x in xs])
        assert np.max(np.abs(vec - sca)) <= 1e-13

    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (1.5, 0.5), (15.5, 0.5), (127.5, 0.5)])
    def test_inverse_residuals(self, a, b):
        ps = np.random.default_rng(11).uniform(0.001, 0.999, 400)
        xs = inv_reg_inc_beta_array(ps, a, b)
        residual = np.abs(reg_inc_beta_array(xs, a, b) - ps)
        assert np.max(residual) <= 2e-11

    def test_endpoints_exact(self):
        out = reg_inc_beta_array(np.array([0.0, 1.0]), 3.5, 0.5)
        assert out[0] == 0.0 and out[1] == 1.0
        inv = inv_reg_inc_beta_array(np.array([0.0, 1.0]), 3.5, 0.5)
        assert inv[0] == 0.0 and inv[1] == 1.0
