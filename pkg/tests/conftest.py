import pytest

from beurlab.analysis import GridSpec, make_function


@pytest.fixture
def serial(monkeypatch):
    """Force serial grid scans."""
    monkeypatch.setenv("BEURLAB_THREADS", "0")


@pytest.fixture
def linear_phi():
    return make_function("linear", [1.0])


@pytest.fixture
def sqrt_phi():
    return make_function("power", [0.5])


@pytest.fixture
def mixed_phi():
    return make_function("linear_plus_root", [0.5])


@pytest.fixture
def small_grid():
    return GridSpec(
        x0=100.0,
        ratio=10.0,
        count=4,
        t_grid=(0.5, 1.0, 2.0),
        delta_grid=(0.1, 0.05),
        per_decade=8,
        window_points=9,
    )
