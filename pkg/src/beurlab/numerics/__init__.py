from .extrapolation import (
    Extrapolation,
    extrapolate_sequence,
    linear_limit_at_zero,
)
from .quadrature import (
    fourier_integral,
    integrate,
    integrate_reciprocal,
    integrate_sampled,
    stieltjes_integral,
)
from .roots import bracket_increasing, invert_increasing
from ._exceptions import (
    IntegrationError,
    NonconvergenceError,
    NumericsError,
    RangeError,
    SingularIntegrandError,
)
from ._parallel import ordered_map, worker_count


__all__ = [
    "Extrapolation",
    "IntegrationError",
    "NonconvergenceError",
    "NumericsError",
    "RangeError",
    "SingularIntegrandError",
    "bracket_increasing",
    "extrapolate_sequence",
    "fourier_integral",
    "integrate",
    "integrate_reciprocal",
    "integrate_sampled",
    "invert_increasing",
    "linear_limit_at_zero",
    "ordered_map",
    "stieltjes_integral",
    "worker_count",
]
