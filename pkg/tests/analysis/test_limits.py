import math

import pytest

from beurlab import BadParamError, DivideByZeroError, DomainError
from beurlab.algebra import PopaParams
from beurlab.analysis import (
    GridSpec,
    SampledFunction,
    boundedness_scan,
    delta_ratio,
    estimate_limit,
    eta_subadditivity_residual,
    heiberg_seneta,
    hom_residual,
    make_function,
    membership_report,
    uniformity_report,
    window_sup_limit,
)


def one(_x: float) -> float:
    return 1.0


def test_grid_spec_defaults_and_validation():
    # Setup
    grid = GridSpec()

    # Assert
    assert grid.x_grid == [1e2, 1e3, 1e4, 1e5, 1e6]
    assert len(grid.x_windows()[0]) == grid.per_decade
    assert "64 x-samples per decade" in grid.note
    with pytest.raises(BadParamError):
        GridSpec(ratio=1.0)
    with pytest.raises(BadParamError):
        GridSpec(delta_grid=(0.1, 0.2))
    with pytest.raises(BadParamError):
        GridSpec(tol=0.0)


def test_delta_ratio(linear_phi):
    # Assert
    assert delta_ratio(math.log, linear_phi, one, 10.0, 0.0) == 0.0
    assert delta_ratio(lambda x: x * x, linear_phi, lambda x: x, 2.0, 1.0) == 6.0
    with pytest.raises(DivideByZeroError):
        delta_ratio(math.log, linear_phi, lambda x: 0.0, 10.0, 1.0)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, -0.5])
def test_log_limit_along_linear_phi(linear_phi, small_grid, t: float):
    # Action
    estimate = estimate_limit(math.log, linear_phi, one, t, small_grid)

    # Assert
    assert estimate.value == pytest.approx(math.log1p(t), abs=1e-10)
    assert estimate.converged is True
    assert [x for x, _ in estimate.samples] == small_grid.x_grid


def test_t_left_of_popa_origin_is_rejected(linear_phi, small_grid):
    # Assert
    with pytest.raises(BadParamError):
        estimate_limit(math.log, linear_phi, one, -1.5, small_grid)


def test_unknown_mode_is_rejected(linear_phi, small_grid):
    # Assert
    with pytest.raises(BadParamError):
        estimate_limit(math.log, linear_phi, one, 1.0, small_grid, mode="median")  # type: ignore[arg-type]


def test_limsup_and_liminf_of_sine():
    # Setup
    phi = make_function("constant", [1.0])
    grid = GridSpec(x0=100.0, count=3, per_decade=2000)
    amplitude = 2.0 * math.sin(0.5)

    # Action
    upper = estimate_limit(math.sin, phi, one, 1.0, grid, "limsup")
    lower = estimate_limit(math.sin, phi, one, 1.0, grid, "liminf")

    # Assert
    assert upper.value == pytest.approx(amplitude, abs=1e-3)
    assert lower.value == pytest.approx(-amplitude, abs=1e-3)
    assert upper.value <= amplitude + 1e-12


def test_windowed_sup_limit_recovers_log_kernel(linear_phi, small_grid):
    # Action
    right_sup = window_sup_limit(math.log, linear_phi, one, 1.0, small_grid)
    right_inf = window_sup_limit(math.log, linear_phi, one, 1.0, small_grid, extremum="inf")
    both = window_sup_limit(math.log, linear_phi, one, 1.0, small_grid, window="both")

    # Assert
    assert right_sup.value == pytest.approx(math.log(2.0), abs=1e-3)
    assert right_inf.value == pytest.approx(math.log(2.0), abs=1e-12)
    assert both.value == pytest.approx(math.log(2.0), abs=1e-3)
    assert right_sup.converged is True
    assert [delta for delta, _ in right_sup.per_delta] == list(small_grid.delta_grid)


def test_window_rejects_unknown_side(linear_phi, small_grid):
    # Assert
    with pytest.raises(BadParamError):
        window_sup_limit(math.log, linear_phi, one, 1.0, small_grid, window="up")  # type: ignore[arg-type]


def test_uniformity_of_log_limit(linear_phi, small_grid):
    # Action
    report = uniformity_report(math.log, linear_phi, one, 1.0, small_grid, reference=math.log(2.0))

    # Assert
    assert report.uniform_verdict == "yes"
    assert report.reference == math.log(2.0)
    assert "per decade" in report.note


def test_membership_of_log_limit(linear_phi, small_grid):
    # Action
    report = membership_report(math.log, linear_phi, one, 1.0, small_grid)

    # Assert
    assert (report.in_A_phi, report.in_A_u, report.in_A_dagger) == ("yes", "yes", "yes")
    assert report.values["lim"].value == pytest.approx(math.log(2.0), abs=1e-10)


def test_membership_of_oscillating_function_is_not_yes(small_grid):
    # Setup
    phi = make_function("constant", [1.0])

    # Action
    report = membership_report(math.sin, phi, one, 1.0, small_grid)

    # Assert
    assert report.in_A_phi in ("no", "undecided")
    assert report.in_A_u != "yes"


def test_heiberg_seneta_holds_for_log(linear_phi, small_grid):
    # Action
    report = heiberg_seneta(math.log, linear_phi, small_grid)

    # Assert
    assert report.holds is True
    assert abs(report.margin) < 0.01
    assert [u for u, _ in report.levels] == [0.5, 0.25, 0.1, 0.05, 0.02]


def test_heiberg_seneta_fails_for_sine_along_linear_phi(linear_phi, small_grid):
    # Action
    report = heiberg_seneta(math.sin, linear_phi, small_grid)

    # Assert
    assert report.holds is False
    assert report.margin > 0.5


def test_boundedness_scan(linear_phi, small_grid):
    # Action
    report = boundedness_scan(math.log, linear_phi, one, (0.5, 2.0), small_grid, n_points=3)

    # Assert
    assert report.bounded is True
    assert [t for t, _ in report.values] == [0.5, 1.25, 2.0]
    assert report.maximum == pytest.approx(math.log(3.0), abs=1e-2)
    with pytest.raises(BadParamError):
        boundedness_scan(math.log, linear_phi, one, (-2.0, 1.0), small_grid)


def test_sampled_function():
    # Setup
    K = SampledFunction.from_samples([(2.0, 4.0), (0.0, 0.0), (1.0, 1.0)])

    # Assert
    assert K.ts == (0.0, 1.0, 2.0)
    assert K(1.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        K(2.5)
    with pytest.raises(BadParamError):
        SampledFunction.from_samples([(1.0, 1.0)])
    with pytest.raises(BadParamError):
        SampledFunction.from_samples([(1.0, 1.0), (1.0, 2.0)])


def test_hom_residuals_of_closed_forms():
    # Setup
    p = PopaParams(1.0)

    # Assert
    for u, v in ((0.5, 1.5), (2.0, 3.0), (-0.5, 0.25)):
        assert abs(hom_residual(math.log1p, p, u, v)) < 1e-14
        assert abs(eta_subadditivity_residual(lambda s: s, p, u, v)) < 1e-14
    assert hom_residual(lambda s: s, p, 1.0, 1.0) == 1.0
