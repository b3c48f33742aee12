"""Limit extrapolation along geometric grids.

Functions:
    extrapolate_sequence: Aitken Δ² or last value, with the error proxy and convergence verdict.
    linear_limit_at_zero: Straight-line extrapolation of (h, value) pairs to h = 0.
"""


from __future__ import annotations
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal


AITKEN_MAX_RATIO = 0.9
ROUNDOFF_FLOOR = 64 * sys.float_info.epsilon


@dataclass(frozen=True)
class Extrapolation:
    value: float
    error_proxy: float
    converged: bool
    method: Literal["aitken", "last"]


def _shrinking(proxies: Sequence[float], floor: float) -> bool:
    # differences at rounding level count as zero
    tail = [0.0 if p <= floor else p for p in proxies[-3:]]
    return all(later <= earlier for earlier, later in zip(tail, tail[1:]))


def extrapolate_sequence(values: Sequence[float], tol: float) -> Extrapolation:
    """Extrapolate a sequence sampled along a growing grid.

    The error proxy is |last − previous|. The sequence is converged when the
    proxy is below `tol` and the proxies did not grow over the last three grid
    points. Aitken's Δ² is applied only when the last two differences shrink
    geometrically with ratio in (0, 0.9]; otherwise the last value is kept.
    """
    if not values:
        raise ValueError("Cannot extrapolate an empty sequence.")
    values = [float(v) for v in values]
    if len(values) == 1:
        return Extrapolation(values[0], math.inf, False, "last")
    proxies = [abs(b - a) for a, b in zip(values, values[1:])]
    error_proxy = proxies[-1]
    floor = ROUNDOFF_FLOOR * max(abs(v) for v in values)
    converged = error_proxy < tol and _shrinking(proxies, floor)
    if len(values) >= 3:
        d1 = values[-2] - values[-3]
        d2 = values[-1] - values[-2]
        if d1 != 0 and d2 != 0:
            ratio = d2 / d1
            if 0 < ratio <= AITKEN_MAX_RATIO:
                return Extrapolation(values[-1] - d2 * d2 / (d2 - d1), error_proxy, converged, "aitken")
    return Extrapolation(values[-1], error_proxy, converged, "last")


def linear_limit_at_zero(hs: Sequence[float], values: Sequence[float]) -> float:
    """Extrapolate to h = 0 through the two smallest h.

    Values are expected monotone in h, so the line through the two points
    nearest zero is the least biased straight-line estimate.
    """
    if len(hs) != len(values) or not hs:
        raise ValueError("hs and values must be non-empty and of equal length.")
    pairs = sorted(zip(hs, values), key=lambda pair: pair[0])
    if len(pairs) == 1:
        return float(pairs[0][1])
    (h1, v1), (h2, v2) = pairs[0], pairs[1]
    if h1 == h2:
        return float(v1)
    return float(v1 - h1 * (v2 - v1) / (h2 - h1))
