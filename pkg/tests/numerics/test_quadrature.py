import math

import pytest

from beurlab.numerics import (
    IntegrationError,
    NonconvergenceError,
    SingularIntegrandError,
    fourier_integral,
    integrate,
    integrate_reciprocal,
    integrate_sampled,
    stieltjes_integral,
)


def test_integrate_polynomial():
    # Action
    value = integrate(lambda x: 3 * x * x, 0.0, 2.0)

    # Assert
    assert value == pytest.approx(8.0, rel=1e-12)


def test_integrate_is_oriented():
    # Action
    forward = integrate(math.sin, 0.0, 1.0)
    backward = integrate(math.sin, 1.0, 0.0)

    # Assert
    assert backward == pytest.approx(-forward, rel=1e-14)
    assert integrate(math.sin, 1.0, 1.0) == 0.0


def test_integrate_wide_range_uses_log_substitution():
    # Action
    value = integrate(lambda w: 1.0 / w, 1.0, 1e8)

    # Assert
    assert value == pytest.approx(math.log(1e8), rel=1e-10)


def test_integrate_rejects_infinite_limits():
    # Assert
    with pytest.raises(IntegrationError):
        integrate(math.exp, 0.0, math.inf)


def test_integrate_sampled_on_positive_range():
    # Action
    value = integrate_sampled(lambda w: 1.0 / w, 1.0, 1e6)

    # Assert
    assert value == pytest.approx(math.log(1e6), rel=1e-6)


def test_integrate_sampled_is_oriented_and_exact_for_quadratics():
    # Action
    forward = integrate_sampled(lambda w: w * w, -1.0, 1.0, panels=8)
    backward = integrate_sampled(lambda w: w * w, 1.0, -1.0, panels=8)

    # Assert
    assert forward == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert backward == pytest.approx(-forward, rel=1e-14)
    assert integrate_sampled(math.sin, 2.0, 2.0) == 0.0
    with pytest.raises(IntegrationError):
        integrate_sampled(math.sin, 0.0, 1.0, panels=0)


def test_integrate_sampled_tolerates_difference_quotients():
    # Setup
    def excess_slope(w: float) -> float:
        step = 0.01 * math.sqrt(w)
        F = lambda v: 3.0 * v + math.log(v)  # noqa: E731
        return (F(w + step) - F(w)) / step - 3.0

    # Action
    value = integrate_sampled(excess_slope, 100.0, 1e4)

    # Assert
    assert value == pytest.approx(math.log(100.0), rel=1e-3)


def test_integrate_reciprocal():
    # Action
    value = integrate_reciprocal(lambda w: w, 1.0, math.e)

    # Assert
    assert value == pytest.approx(1.0, rel=1e-12)


def test_integrate_reciprocal_detects_sign_change():
    # Assert
    with pytest.raises(SingularIntegrandError):
        integrate_reciprocal(lambda w: w - 2.0, 1.0, 3.0)


def test_fourier_integral_of_box():
    # Setup
    xi = 0.25

    # Action
    value = fourier_integral(lambda t: 1.0, -0.5, 0.5, xi)

    # Assert
    assert value.real == pytest.approx(math.sin(math.pi * xi) / (math.pi * xi), rel=1e-9)
    assert abs(value.imag) < 1e-12


def test_fourier_integral_at_zero_frequency_is_the_integral():
    # Action
    value = fourier_integral(lambda t: t * t, 0.0, 1.0, 0.0)

    # Assert
    assert value == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_stieltjes_integral_of_smooth_integrator():
    # Action
    value = stieltjes_integral(lambda t: t, lambda t: t * t, 0.0, 1.0)

    # Assert
    assert value == pytest.approx(2.0 / 3.0, rel=1e-7)


def test_stieltjes_integral_reversed_limits():
    # Action
    value = stieltjes_integral(lambda t: 1.0, math.exp, 1.0, 0.0)

    # Assert
    assert value == pytest.approx(-(math.e - 1.0), rel=1e-7)


def test_stieltjes_integral_reports_nonconvergence():
    # Setup
    wild = lambda t: math.sin(1e6 * t)  # noqa: E731

    # Assert
    with pytest.raises(NonconvergenceError):
        stieltjes_integral(lambda t: 1.0 + t, wild, 0.0, 1.0, n_start=2, max_halvings=3)
