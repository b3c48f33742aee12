"""Quadrature front-end over `scipy.integrate.quad`.

Functions:
    integrate: Adaptive Gauss–Kronrod integral with a log-substitution for wide positive ranges.
    integrate_sampled: Composite Simpson rule on a fixed grid, for integrands carrying evaluation noise.
    integrate_reciprocal: Integral of 1/f after checking f keeps a strict sign.
    fourier_integral: ∫ f(t) e^{-2πiξt} dt over a finite support.
    stieltjes_integral: Midpoint Stieltjes sums with Richardson halving.
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Sequence

import numpy as np
from scipy.integrate import quad, simpson

from .._null_logger import get_null_logger
from ._exceptions import (
    IntegrationError,
    NonconvergenceError,
    SingularIntegrandError,
)


EPSABS = 1e-14
EPSREL = 1e-12
SUBDIVISION_LIMIT = 200
LOG_SUBSTITUTION_SPAN = 1e3
ACCEPTED_ERROR = 1e-10
SIGN_SCAN_POINTS = 65
SAMPLED_PANELS = 256


def _quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    epsabs: float,
    epsrel: float,
    points: Sequence[float] | None,
    logger: logging.Logger,
    **weight,
) -> float:
    kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=SUBDIVISION_LIMIT, full_output=1)
    if points and not weight:
        inner = sorted(p for p in points if a < p < b)
        if inner:
            kwargs["points"] = inner
    result = quad(func, a, b, **kwargs, **weight)
    value, abserr = float(result[0]), float(result[1])
    if len(result) > 3:
        # quad appends a message when ier > 0
        if abserr <= max(ACCEPTED_ERROR, epsrel) * max(1.0, abs(value)):
            logger.debug("quad on [%g, %g] flagged %r, accepted with abserr=%.3g", a, b, result[3], abserr)
            return value
        raise NonconvergenceError(
            f"Quadrature on [{a}, {b}] stalled (abserr={abserr:.3g}): {result[3]}"
        )
    return value


def integrate(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    epsabs: float = EPSABS,
    epsrel: float = EPSREL,
    points: Sequence[float] | None = None,
    logger: logging.Logger | None = None,
) -> float:
    """Integrate `func` over [a, b] (oriented, so a > b flips the sign).

    Positive ranges spanning more than three decades are integrated in the
    variable s = log w, which keeps the Gauss–Kronrod panels balanced for
    integrands like 1/φ with φ growing.

    Raises:
        NonconvergenceError: The error estimate stays above max(1e-10, epsrel) relative.
        IntegrationError: The limits are not finite.
    """
    logger = logger or get_null_logger()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise IntegrationError(f"Integration limits must be finite, got [{a}, {b}].")
    if a == b:
        return 0.0
    if a > b:
        return -integrate(func, b, a, epsabs=epsabs, epsrel=epsrel, points=points, logger=logger)
    if a > 0 and b / a > LOG_SUBSTITUTION_SPAN:
        logger.debug("log substitution on [%g, %g]", a, b)
        log_points = [math.log(p) for p in points or () if a < p < b]
        return _quad(
            lambda s: func(math.exp(s)) * math.exp(s),
            math.log(a),
            math.log(b),
            epsabs,
            epsrel,
            log_points,
            logger,
        )
    return _quad(func, a, b, epsabs, epsrel, points, logger)


def integrate_sampled(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    panels: int = SAMPLED_PANELS,
    logger: logging.Logger | None = None,
) -> float:
    """Integrate `func` over [a, b] (oriented) with Simpson's rule on a fixed grid.

    For integrands that are themselves finite-difference quotients, whose
    rounding noise makes adaptive quadrature report roundoff. Positive ranges
    are sampled geometrically, anything else uniformly.

    Raises:
        IntegrationError: The limits are not finite or `panels` is not positive.
    """
    logger = logger or get_null_logger()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise IntegrationError(f"Integration limits must be finite, got [{a}, {b}].")
    if panels < 1:
        raise IntegrationError(f"panels must be positive, got {panels}.")
    if a == b:
        return 0.0
    if a > b:
        return -integrate_sampled(func, b, a, panels=panels, logger=logger)
    if a > 0:
        nodes = np.geomspace(a, b, panels + 1)
    else:
        nodes = np.linspace(a, b, panels + 1)
    values = np.array([func(float(w)) for w in nodes])
    logger.debug("simpson on [%g, %g] with %d panels", a, b, panels)
    return float(simpson(values, x=nodes))


def integrate_reciprocal(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    epsrel: float = EPSREL,
    logger: logging.Logger | None = None,
) -> float:
    """Integrate 1/func over [a, b] (oriented).

    Raises:
        SingularIntegrandError: func vanishes or changes sign on the interval.
    """
    if a == b:
        return 0.0
    lo, hi = min(a, b), max(a, b)
    if lo > 0 and hi / lo > LOG_SUBSTITUTION_SPAN:
        scan = np.geomspace(lo, hi, SIGN_SCAN_POINTS)
    else:
        scan = np.linspace(lo, hi, SIGN_SCAN_POINTS)
    signs = {math.copysign(1.0, value) if value != 0 else 0.0 for value in map(func, scan)}
    if 0.0 in signs or len(signs) > 1:
        raise SingularIntegrandError(f"Integrand 1/f is singular on [{lo}, {hi}].")

    def reciprocal(w: float) -> float:
        value = func(w)
        if value == 0:
            raise SingularIntegrandError(f"f vanishes at {w!r}.")
        return 1.0 / value

    return integrate(reciprocal, a, b, epsrel=epsrel, logger=logger)


def fourier_integral(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    xi: float,
    *,
    logger: logging.Logger | None = None,
) -> complex:
    """Return ∫_lo^hi func(t)·e^{-2πiξt} dt using quad's oscillatory weights."""
    logger = logger or get_null_logger()
    if xi == 0:
        return complex(integrate(func, lo, hi, logger=logger), 0.0)
    omega = 2.0 * math.pi * xi
    real = _quad(func, lo, hi, EPSABS, 1e-10, None, logger, weight="cos", wvar=omega)
    imag = _quad(func, lo, hi, EPSABS, 1e-10, None, logger, weight="sin", wvar=omega)
    return complex(real, -imag)


def stieltjes_integral(
    weight: Callable[[float], float],
    integrator: Callable[[float], float],
    a: float,
    b: float,
    *,
    n_start: int = 64,
    rtol: float = 1e-8,
    atol: float = 1e-14,
    max_halvings: int = 14,
    logger: logging.Logger | None = None,
) -> float:
    """Approximate ∫_a^b weight(t) d integrator(t) by midpoint partition sums.

    The partition is halved until two successive Richardson-corrected sums
    agree to `rtol` relative (with `atol` as a floor). Only the new nodes are
    evaluated at each halving.

    Raises:
        NonconvergenceError: No agreement after `max_halvings` halvings.
    """
    logger = logger or get_null_logger()
    if a == b:
        return 0.0
    if a > b:
        return -stieltjes_integral(
            weight, integrator, b, a,
            n_start=n_start, rtol=rtol, atol=atol, max_halvings=max_halvings, logger=logger,
        )
    nodes = np.linspace(a, b, n_start + 1)
    values = np.array([integrator(t) for t in nodes])

    def partition_sum(nodes: np.ndarray, values: np.ndarray) -> float:
        mids = 0.5 * (nodes[:-1] + nodes[1:])
        weights = np.array([weight(t) for t in mids])
        return float(np.sum(weights * np.diff(values)))

    previous_sum = partition_sum(nodes, values)
    previous_estimate: float | None = None
    for level in range(1, max_halvings + 1):
        mids = 0.5 * (nodes[:-1] + nodes[1:])
        mid_values = np.array([integrator(t) for t in mids])
        refined_nodes = np.empty(2 * len(nodes) - 1)
        refined_nodes[0::2], refined_nodes[1::2] = nodes, mids
        refined_values = np.empty_like(refined_nodes)
        refined_values[0::2], refined_values[1::2] = values, mid_values
        nodes, values = refined_nodes, refined_values

        current_sum = partition_sum(nodes, values)
        estimate = current_sum + (current_sum - previous_sum) / 3.0
        if previous_estimate is not None:
            change = abs(estimate - previous_estimate)
            if change <= max(rtol * abs(estimate), atol):
                logger.debug("stieltjes sum settled after %d halvings (%d panels)", level, len(nodes) - 1)
                return estimate
        previous_sum, previous_estimate = current_sum, estimate
    raise NonconvergenceError(
        f"Stieltjes sums on [{a}, {b}] did not settle after {max_halvings} halvings."
    )
