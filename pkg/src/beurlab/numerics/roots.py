from __future__ import annotations
import logging
import math
from collections.abc import Callable

import numpy as np
from scipy.optimize import brentq

from .._null_logger import get_null_logger
from ._exceptions import RangeError


MAX_BRACKET_STEPS = 200


def bracket_increasing(
    func: Callable[[float], float],
    target: float,
    start: float,
    *,
    lower_bound: float = -math.inf,
    upper_bound: float = 1e18,
    logger: logging.Logger | None = None,
) -> tuple[float, float]:
    """Find [lo, hi] with func(lo) <= target <= func(hi) for an increasing func.

    Rightward search doubles the step from `start`; leftward search halves the
    gap to `lower_bound` when it is finite and doubles the step otherwise.

    Raises:
        RangeError: The target is not reached inside (lower_bound, upper_bound].
    """
    logger = logger or get_null_logger()
    value = func(start)
    if value == target:
        return start, start
    step = max(1.0, abs(start))
    if value < target:
        lo = start
        for _ in range(MAX_BRACKET_STEPS):
            hi = min(lo + step, upper_bound)
            if func(hi) >= target:
                logger.debug("bracketed %g in [%g, %g]", target, lo, hi)
                return lo, hi
            if hi >= upper_bound:
                break
            lo, step = hi, 2.0 * step
        raise RangeError(f"{target!r} lies beyond the bracketing span (upper bound {upper_bound:g}).")

    hi = start
    for _ in range(MAX_BRACKET_STEPS):
        if math.isfinite(lower_bound):
            lo = lower_bound + 0.5 * (hi - lower_bound)
            if lo == hi or lo <= lower_bound:
                break
        else:
            lo = hi - step
            step *= 2.0
        if func(lo) <= target:
            logger.debug("bracketed %g in [%g, %g]", target, lo, hi)
            return lo, hi
        hi = lo
    raise RangeError(f"{target!r} lies left of the reachable range (lower bound {lower_bound:g}).")


def invert_increasing(
    func: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
) -> float:
    """Solve func(x) = target on a bracket with Brent's hybrid method."""
    if lo == hi:
        return lo
    return float(
        brentq(
            lambda x: func(x) - target,
            lo,
            hi,
            xtol=1e-300,
            rtol=4 * np.finfo(float).eps,
            maxiter=500,
        )
    )
