import math
import warnings

import numpy as np
import pytest

from beurlab import BadParamError
from beurlab.algebra import KernelSpec, PopaParams
from beurlab.analysis import DegenerateFitError, NonSEWarning, fit_indices, fit_rho, make_function


T_GRID = np.linspace(0.2, 2.0, 8)


def samples_of(func, ts=T_GRID):
    return [(float(t), func(float(t))) for t in ts]


def test_fit_c_log_eta():
    # Setup
    samples = samples_of(lambda t: 2.0 * math.log1p(t))

    # Action
    result = fit_indices(samples, PopaParams(1.0), "c_log_eta")

    # Assert
    assert result.params == {"c": pytest.approx(2.0, rel=1e-12)}
    assert result.rms < 1e-12
    assert result.n_samples == 8


def test_fit_c_linear():
    # Action
    result = fit_indices(samples_of(lambda t: -0.5 * t), PopaParams(0.0), "c_linear")

    # Assert
    assert result.params["c"] == pytest.approx(-0.5, rel=1e-12)


def test_fit_c_h_gamma_recovers_scale_and_index():
    # Setup
    kernel = KernelSpec("H_gamma", gamma=0.7)
    samples = samples_of(lambda t: 1.5 * kernel(t))

    # Action
    result = fit_indices(samples, PopaParams(0.0), "c_H_gamma")

    # Assert
    assert result.params["c"] == pytest.approx(1.5, abs=1e-6)
    assert result.params["gamma"] == pytest.approx(0.7, abs=1e-6)


def test_fit_rho_positive_index():
    # Setup
    kernel = KernelSpec("K_rho_gamma", 1.0, 1.5)

    # Action
    result = fit_indices(samples_of(kernel), PopaParams(1.0), "theorem8_rho_pos")

    # Assert
    assert result.params == {"gamma": pytest.approx(0.5, abs=1e-6)}


def test_fit_rho_zero_index():
    # Setup
    samples = samples_of(lambda t: 2.0 * (1.0 - math.exp(-0.8 * t)) / 0.8)

    # Action
    result = fit_indices(samples, PopaParams(0.0), "theorem8_rho_zero")

    # Assert
    assert result.params["c"] == pytest.approx(2.0, abs=1e-6)
    assert result.params["gamma"] == pytest.approx(0.8, abs=1e-6)


def test_degenerate_fits_are_rejected():
    # Setup
    p = PopaParams(1.0)

    # Assert
    with pytest.raises(DegenerateFitError):
        fit_indices([(0.5, 1.0), (1.0, 2.0)], p, "c_linear")
    with pytest.raises(DegenerateFitError):
        fit_indices([(0.5, 1.0), (0.5, 1.0), (1.0, 2.0)], p, "c_linear")
    with pytest.raises(DegenerateFitError):
        fit_indices(samples_of(math.log1p), PopaParams(0.0), "c_log_eta")


def test_bad_fit_parameters_are_rejected():
    # Assert
    with pytest.raises(BadParamError):
        fit_indices([(-2.0, 1.0), (0.5, 1.0), (1.0, 2.0)], PopaParams(1.0), "c_linear")
    with pytest.raises(BadParamError):
        fit_indices(samples_of(math.log1p), PopaParams(0.0), "theorem8_rho_pos")
    with pytest.raises(BadParamError):
        fit_indices(samples_of(math.log1p), PopaParams(1.0), "cubic")  # type: ignore[arg-type]


def test_fit_rho_of_self_equivarying_phi(mixed_phi):
    # Action
    with warnings.catch_warnings():
        warnings.simplefilter("error", NonSEWarning)
        estimate = fit_rho(mixed_phi)

    # Assert
    assert estimate.value == pytest.approx(0.5, abs=1e-2)
    assert estimate.error_proxy < 1e-2
    assert estimate.x == 1e6


def test_fit_rho_warns_for_non_self_equivarying_phi():
    # Setup
    phi = make_function("expression", source="x*log(x)", lower=1.0)

    # Assert
    with pytest.warns(NonSEWarning):
        fit_rho(phi)
