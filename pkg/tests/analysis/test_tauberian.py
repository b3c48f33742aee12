import math

import numpy as np
import pytest

from beurlab import BadParamError, DomainError
from beurlab.analysis import (
    HypothesisFailureError,
    WienerCheckFailureError,
    box_kernel,
    bv_sup_estimate,
    class_m_norm,
    convolve,
    convolve_stieltjes,
    corollary3_experiment,
    expression_kernel,
    fourier_transform,
    gaussian_kernel,
    indicator_kernel,
    make_function,
    tauberian_experiment,
    triangle_kernel,
    wiener_check,
)
from beurlab.realfunc import RealFunc


@pytest.fixture
def unit_phi():
    return make_function("constant", [1.0])


def test_gaussian_passes_wiener_check():
    # Action
    report = wiener_check(gaussian_kernel())

    # Assert
    assert report.passed is True
    assert report.min_abs > 1e-6
    assert report.n_points == 4097
    assert "does not certify" in report.note


def test_box_kernel_fails_wiener_check_at_first_zero():
    # Action
    report = wiener_check(box_kernel())

    # Assert
    assert report.passed is False
    assert report.argmin_xi == 1.0
    assert report.min_abs < 1e-12


@pytest.mark.parametrize("xi", [0.0, 1.0, -1.0, 2.0, -2.0])
def test_numeric_transform_matches_closed_form(xi: float):
    # Setup
    numeric = expression_kernel("exp(-pi*x^2)")

    # Action
    value = fourier_transform(numeric, xi)

    # Assert
    assert abs(value - gaussian_kernel().transform(xi)) < 1e-6


def test_kernel_integrals_and_supports():
    # Assert
    assert gaussian_kernel().significant_support() == (-4.0, 4.0)
    assert gaussian_kernel().integral() == pytest.approx(1.0, rel=1e-9)
    assert triangle_kernel().integral() == pytest.approx(1.0, rel=1e-9)
    assert box_kernel(2.0).integral() == pytest.approx(2.0, rel=1e-9)
    assert indicator_kernel(0.5).integral() == pytest.approx(1.0, rel=1e-9)
    with pytest.raises(BadParamError):
        box_kernel(0.0)
    with pytest.raises(BadParamError):
        indicator_kernel(-1.0)


def test_convolution_with_unit_phi_is_classical(unit_phi):
    # Action
    value = convolve(gaussian_kernel(), lambda u: u, unit_phi, 5.0)

    # Assert
    assert value == pytest.approx(5.0, rel=1e-9)


def test_convolution_reaching_left_of_domain_raises(unit_phi):
    # Setup
    H = RealFunc(math.log, lower=0.0, name="log")

    # Assert
    with pytest.raises(DomainError):
        convolve(gaussian_kernel(), H, unit_phi, 1.0)


def test_stieltjes_convolution_divides_by_phi(sqrt_phi):
    # Action
    value = convolve_stieltjes(triangle_kernel(), lambda u: 3.0 * u, sqrt_phi, 1e4)

    # Assert
    assert value == pytest.approx(3.0, rel=1e-7)


def test_class_m_norm():
    # Action
    gaussian = class_m_norm(gaussian_kernel().func)
    harmonic = class_m_norm(lambda x: 1.0 / (1.0 + abs(x)))

    # Assert
    assert 2.0 < gaussian.value < 2.2
    assert gaussian.tail_proxy < 1e-12
    assert harmonic.value == math.inf


def test_bv_estimate(sqrt_phi, unit_phi):
    # Action
    linear = bv_sup_estimate(lambda u: 2.0 * u, sqrt_phi, 1.0, [1e2, 1e3, 1e4], [0.0, 0.5], 0.01)
    square = bv_sup_estimate(lambda u: u * u, unit_phi, 1.0, [10.0, 100.0, 1000.0], [0.0, 0.5], 0.01)

    # Assert
    assert linear.trend == "bounded"
    assert linear.M_estimate == pytest.approx(2.0, rel=1e-9)
    assert square.trend == "growing"
    with pytest.raises(BadParamError):
        bv_sup_estimate(lambda u: u, unit_phi, 0.0, [1.0], [0.0], 0.01)


def test_tauberian_lebesgue_form(sqrt_phi, small_grid, serial):
    # Action
    report = tauberian_experiment(
        gaussian_kernel(), triangle_kernel(), sqrt_phi, 2.0, small_grid, H=lambda u: 2.0 + math.exp(-u)
    )

    # Assert
    assert report.verdict == "pass"
    tables = {row[0] for row in report.rows}
    assert tables == {"hypothesis", "conclusion"}
    last = [row for row in report.rows if row[0] == "conclusion"][-1]
    assert last[1] == 1e5
    assert last[4] < 0.01
    assert report.config["form"] == "lebesgue"


def test_tauberian_stieltjes_form(sqrt_phi, small_grid):
    # Action
    report = tauberian_experiment(
        gaussian_kernel(), triangle_kernel(), sqrt_phi, 2.0, small_grid, U=lambda u: 2.0 * u
    )

    # Assert
    assert report.verdict == "pass"
    assert report.config["form"] == "stieltjes"


def test_tauberian_aborts_without_wiener_kernel(sqrt_phi, small_grid):
    # Assert
    with pytest.raises(WienerCheckFailureError):
        tauberian_experiment(box_kernel(), triangle_kernel(), sqrt_phi, 2.0, small_grid, H=lambda u: 2.0)


def test_tauberian_aborts_when_hypothesis_fails(sqrt_phi, small_grid):
    # Assert
    with pytest.raises(HypothesisFailureError):
        tauberian_experiment(
            gaussian_kernel(), triangle_kernel(), sqrt_phi, 3.0, small_grid, H=lambda u: 2.0
        )
    with pytest.raises(HypothesisFailureError):
        tauberian_experiment(
            gaussian_kernel(), triangle_kernel(), make_function("constant", [1.0]), 2.0, small_grid, U=lambda u: u * u
        )


def test_tauberian_needs_exactly_one_target(sqrt_phi, small_grid):
    # Assert
    with pytest.raises(BadParamError):
        tauberian_experiment(gaussian_kernel(), triangle_kernel(), sqrt_phi, 2.0, small_grid)


def test_corollary3_with_linear_charge(sqrt_phi, small_grid):
    # Action
    report = corollary3_experiment(lambda u: 2.0 * u, sqrt_phi, 2.0, (1.0, math.sqrt(2.0)), small_grid)

    # Assert
    assert report.verdict == "pass"
    for name, t, _x, value, target, error in report.rows:
        assert error < 1e-6
        assert target == (2.0 * t if name == "difference" else 2.0)
    assert len(report.rows) == 2 * 2 * len(small_grid.x_grid)


def test_corollary3_fails_for_wrong_constant(sqrt_phi, small_grid):
    # Action
    report = corollary3_experiment(lambda u: 2.0 * u, sqrt_phi, 1.0, (1.0,), small_grid)

    # Assert
    assert report.verdict == "fail"
    assert np.isclose(report.rows[0][3], 2.0)
