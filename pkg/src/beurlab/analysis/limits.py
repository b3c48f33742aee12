"""
Asymptotic estimators for Beurling moving-average limits.

"x → ∞" is discretized by a geometric x-grid and "δ ↓ 0" by a decreasing
δ-grid. Every estimator is total: non-convergence shows up as
`converged=False`, never as an exception, so t-grid surveys always finish.
Windowed limsup/liminf values are sampled diagnostics: a limsup attained on a
thin set of x can be under-reported, and reports carry the sampling density.

Classes:
    GridSpec: The x-, t- and δ-grids.
    LimitEstimate: Extrapolated value with error proxy and verdict.
    UniformityReport, MembershipReport, HeibergSenetaReport, BoundednessReport
    SampledFunction: Spline interpolant of estimated kernels.

Functions:
    delta_ratio, estimate_limit, window_sup_limit, uniformity_report,
    membership_report, heiberg_seneta, boundedness_scan, hom_residual,
    eta_subadditivity_residual
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.interpolate import CubicSpline

from .._exceptions import BadParamError, DivideByZeroError, DomainError
from .._null_logger import get_null_logger
from ..algebra.popa import PopaParams, circ, eta
from ..numerics import extrapolate_sequence, linear_limit_at_zero, ordered_map
from .flows import FlowFunc


Mode = Literal["lim", "limsup", "liminf"]
Verdict = Literal["yes", "no", "undecided"]
Window = Literal["right", "left", "both"]

WINDOW_NOTE = (
    "windowed suprema over sampled x stand in for suprema over sequences; "
    "{per_decade} x-samples per decade, {window_points} s-points per window"
)


@dataclass(frozen=True)
class GridSpec:
    """Discretization of x → ∞ and δ ↓ 0.

    Attributes:
        x0 (float): First x.
        ratio (float): Geometric step of the x-grid.
        count (int): Number of x-grid points.
        t_grid (tuple[float, ...]): Default t values for surveys.
        delta_grid (tuple[float, ...]): Strictly decreasing window widths.
        tol (float): Convergence tolerance on the error proxy.
        per_decade (int): x-samples per grid step for windowed extrema.
        window_points (int): s-points per window.
    """
    x0: float = 100.0
    ratio: float = 10.0
    count: int = 5
    t_grid: tuple[float, ...] = (0.25, 0.5, 1.0, 1.5, 2.0)
    delta_grid: tuple[float, ...] = (0.5, 0.25, 0.1, 0.05, 0.02)
    tol: float = 1e-4
    per_decade: int = 64
    window_points: int = 33

    def __post_init__(self):
        if not (self.x0 > 0 and self.ratio > 1 and self.count >= 1):
            raise BadParamError("GridSpec needs x0 > 0, ratio > 1 and count >= 1.")
        if not math.isfinite(self.x0 * self.ratio ** (self.count - 1)):
            raise BadParamError("The x-grid overflows.")
        deltas = self.delta_grid
        if not deltas or deltas[-1] <= 0 or any(b >= a for a, b in zip(deltas, deltas[1:])):
            raise BadParamError("delta_grid must be strictly decreasing and positive.")
        if not self.tol > 0:
            raise BadParamError("tol must be positive.")
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        object.__setattr__(self, "delta_grid", tuple(float(d) for d in deltas))

    @property
    def x_grid(self) -> list[float]:
        return [self.x0 * self.ratio ** k for k in range(self.count)]

    def x_windows(self) -> list[np.ndarray]:
        """Log-spaced samples of [x_k, x_k·ratio) for every grid point x_k."""
        return [
            np.geomspace(x, x * self.ratio, self.per_decade, endpoint=False)
            for x in self.x_grid
        ]

    @property
    def note(self) -> str:
        return WINDOW_NOTE.format(per_decade=self.per_decade, window_points=self.window_points)


@dataclass(frozen=True)
class LimitEstimate:
    """An extrapolated limit.

    Attributes:
        value (float): The extrapolated limit.
        error_proxy (float): |last − previous| along the x-grid.
        converged (bool): Proxy below tolerance and not growing over the last three points.
        samples (tuple[tuple[float, float], ...]): (x, value) pairs used.
        per_delta (tuple[tuple[float, LimitEstimate], ...]): Per-window estimates for windowed limits.
    """
    value: float
    error_proxy: float
    converged: bool
    samples: tuple[tuple[float, float], ...] = ()
    per_delta: tuple[tuple[float, LimitEstimate], ...] = field(default=(), repr=False)


def _check_t(phi: FlowFunc, t: float) -> None:
    p = phi.popa
    if not p.in_G_plus(t):
        raise BadParamError(f"t={t!r} must exceed the Popa origin {p.rho_star!r}.")


def delta_ratio(
    F: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    x: float,
    t: float,
) -> float:
    """(F(x + tφ(x)) − F(x))/ψ(x); exactly 0 at t = 0.

    Raises:
        DomainError: An evaluation point leaves a domain.
        DivideByZeroError: ψ(x) = 0.
    """
    if t == 0:
        return 0.0
    psi_x = psi(x)
    if psi_x == 0:
        raise DivideByZeroError(f"psi vanishes at x={x!r}.")
    return (F(x + t * phi(x)) - F(x)) / psi_x


def _estimate(values: Sequence[float], xs: Sequence[float], tol: float) -> LimitEstimate:
    result = extrapolate_sequence(values, tol)
    return LimitEstimate(
        result.value,
        result.error_proxy,
        result.converged,
        tuple((float(x), float(v)) for x, v in zip(xs, values)),
    )


def _tail_extrema(window_extrema: Sequence[float], extremum: Literal["sup", "inf"]) -> list[float]:
    """Running extremum over windows k, k+1, ..., the finite stand-in for sup_{x ≥ x_k}."""
    pick = max if extremum == "sup" else min
    tails: list[float] = []
    current = None
    for value in reversed(window_extrema):
        current = value if current is None else pick(current, value)
        tails.append(current)
    return tails[::-1]


def estimate_limit(
    F: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    t: float,
    grid: GridSpec | None = None,
    mode: Mode = "lim",
    logger: logging.Logger | None = None,
) -> LimitEstimate:
    """Estimate lim, limsup or liminf over x of delta_ratio(F, φ, ψ, x, t).

    `lim` extrapolates the ratio along the x-grid. `limsup`/`liminf` take the
    extremum over `per_decade` log-spaced samples of each grid step, form the
    tail extrema and extrapolate those.
    """
    grid = grid or GridSpec()
    logger = logger or get_null_logger()
    _check_t(phi, t)
    if mode == "lim":
        xs = grid.x_grid
        values = ordered_map(lambda x: delta_ratio(F, phi, psi, x, t), xs)
    elif mode in ("limsup", "liminf"):
        extremum = "sup" if mode == "limsup" else "inf"
        pick = max if extremum == "sup" else min

        def window_extremum(window: np.ndarray) -> float:
            return pick(delta_ratio(F, phi, psi, float(x), t) for x in window)

        xs = grid.x_grid
        values = _tail_extrema(ordered_map(window_extremum, grid.x_windows()), extremum)
    else:
        raise BadParamError(f"Unknown mode {mode!r}.")
    estimate = _estimate(values, xs, grid.tol)
    logger.debug("%s at t=%g: %.12g (proxy %.3g, converged=%s)", mode, t, estimate.value, estimate.error_proxy, estimate.converged)
    return estimate


def _window_points(t: float, delta: float, window: Window, n: int, p: PopaParams) -> np.ndarray:
    match window:
        case "right":
            points = np.linspace(t, t + delta, n, endpoint=False)
        case "left":
            points = np.linspace(t, t - delta, n, endpoint=False)
        case "both":
            points = np.linspace(t - delta, t + delta, n + 2)[1:-1]
        case _:
            raise BadParamError(f"Unknown window {window!r}.")
    return points[points > p.rho_star]


def window_sup_limit(
    h: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    t: float,
    grid: GridSpec | None = None,
    *,
    window: Window = "right",
    extremum: Literal["sup", "inf"] = "sup",
    logger: logging.Logger | None = None,
) -> LimitEstimate:
    """lim_{δ↓0} limsup_x sup_{s ∈ I_δ(t)} delta_ratio(h, φ, ψ, x, s).

    With ψ ≡ 1 and the right window [t, t+δ) this is H†(t); with ψ = φ it is
    Ω†(t); symmetric windows give the two-sided versions, and
    `extremum="inf"` the matching liminf-inf. For each δ the window extremum is
    taken over the s-points and the per-decade x-samples, then extrapolated
    along the x-grid; the δ → 0 limit is the straight line through the two
    smallest δ.
    """
    grid = grid or GridSpec()
    logger = logger or get_null_logger()
    _check_t(phi, t)
    pick = max if extremum == "sup" else min
    p = phi.popa
    per_delta: list[tuple[float, LimitEstimate]] = []
    for delta in grid.delta_grid:
        points = _window_points(t, delta, window, grid.window_points, p)

        def window_extremum(xs: np.ndarray) -> float:
            return pick(
                delta_ratio(h, phi, psi, float(x), float(s))
                for x in xs
                for s in points
            )

        extrema = ordered_map(window_extremum, grid.x_windows())
        values = _tail_extrema(extrema, extremum)
        per_delta.append((delta, _estimate(values, grid.x_grid, grid.tol)))

    deltas = [delta for delta, _ in per_delta]
    value = linear_limit_at_zero(deltas, [estimate.value for _, estimate in per_delta])
    smallest = sorted(per_delta, key=lambda pair: pair[0])[:2]
    error_proxy = max(estimate.error_proxy for _, estimate in smallest)
    converged = all(estimate.converged for _, estimate in smallest)
    logger.debug("window %s-%s at t=%g: %.12g", window, extremum, t, value)
    return LimitEstimate(value, error_proxy, converged, per_delta=tuple(per_delta))


@dataclass(frozen=True)
class UniformityReport:
    upper: LimitEstimate
    lower: LimitEstimate
    pointwise: LimitEstimate
    reference: float
    uniform_verdict: Verdict
    note: str


def uniformity_report(
    F: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    t: float,
    grid: GridSpec | None = None,
    *,
    reference: float | None = None,
    tol: float = 0.01,
    logger: logging.Logger | None = None,
) -> UniformityReport:
    """Check uniform convergence near t through windowed upper and lower limits.

    The limit is uniform near t when the limsup-sup and liminf-inf over the
    symmetric windows both tend, as δ ↓ 0, to the limit value at t. That value
    is `reference` when given, otherwise the pointwise estimate.
    """
    grid = grid or GridSpec()
    upper = window_sup_limit(F, phi, psi, t, grid, window="both", extremum="sup", logger=logger)
    lower = window_sup_limit(F, phi, psi, t, grid, window="both", extremum="inf", logger=logger)
    pointwise = estimate_limit(F, phi, psi, t, grid, "lim", logger=logger)
    target = pointwise.value if reference is None else reference
    if not (upper.converged and lower.converged and pointwise.converged):
        verdict: Verdict = "undecided"
    elif abs(upper.value - target) <= tol and abs(lower.value - target) <= tol:
        verdict = "yes"
    else:
        verdict = "no"
    return UniformityReport(upper, lower, pointwise, target, verdict, grid.note)


@dataclass(frozen=True)
class MembershipReport:
    """Three-valued membership of t in A^φ, A_u and A†."""
    t: float
    in_A_phi: Verdict
    in_A_u: Verdict
    in_A_dagger: Verdict
    values: dict[str, LimitEstimate]


def membership_report(
    F: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    t: float,
    grid: GridSpec | None = None,
    *,
    tol: float = 0.01,
    logger: logging.Logger | None = None,
) -> MembershipReport:
    """Classify t: A^φ (the limit exists), A_u (it is uniform near t), A† (H†(t) finite).

    "no" is reported only when the limsup and liminf both converge to values
    more than `tol` apart; non-convergence is "undecided".
    """
    grid = grid or GridSpec()
    lim = estimate_limit(F, phi, psi, t, grid, "lim", logger=logger)
    upper = estimate_limit(F, phi, psi, t, grid, "limsup", logger=logger)
    lower = estimate_limit(F, phi, psi, t, grid, "liminf", logger=logger)
    if upper.converged and lower.converged and upper.value - lower.value > tol:
        in_A_phi: Verdict = "no"
    elif lim.converged:
        in_A_phi = "yes"
    else:
        in_A_phi = "undecided"

    uniformity = uniformity_report(F, phi, psi, t, grid, tol=tol, logger=logger)
    in_A_u = uniformity.uniform_verdict
    if in_A_u == "yes" and in_A_phi != "yes":
        in_A_u = "undecided"

    dagger = window_sup_limit(F, phi, lambda _x: 1.0, t, grid, logger=logger)
    in_A_dagger: Verdict = "yes" if dagger.converged and math.isfinite(dagger.value) else "undecided"
    return MembershipReport(
        t,
        in_A_phi,
        in_A_u,
        in_A_dagger,
        {
            "lim": lim,
            "limsup": upper,
            "liminf": lower,
            "upper": uniformity.upper,
            "lower": uniformity.lower,
            "dagger": dagger,
        },
    )


@dataclass(frozen=True)
class HeibergSenetaReport:
    holds: bool
    margin: float
    tol: float
    levels: tuple[tuple[float, float], ...]


HS_LEVELS = (0.5, 0.25, 0.1, 0.05, 0.02)


def heiberg_seneta(
    h: Callable[[float], float],
    phi: FlowFunc,
    grid: GridSpec | None = None,
    *,
    u_levels: Sequence[float] = HS_LEVELS,
    tol: float = 0.01,
    logger: logging.Logger | None = None,
) -> HeibergSenetaReport:
    """Two-sided Heiberg–Seneta check: limsup_{u→0} H†(u) ≤ 0.

    At each level u the larger of H†(u) and H†(−u) is kept (−u only when it
    stays right of the Popa origin); the margin is their straight-line
    extrapolation to u = 0 through the two smallest levels.
    """
    grid = grid or GridSpec()
    p = phi.popa
    one = lambda _x: 1.0  # noqa: E731
    levels: list[tuple[float, float]] = []
    for u in u_levels:
        value = window_sup_limit(h, phi, one, u, grid, logger=logger).value
        if p.in_G_plus(-u):
            value = max(value, window_sup_limit(h, phi, one, -u, grid, logger=logger).value)
        levels.append((float(u), value))
    margin = linear_limit_at_zero([u for u, _ in levels], [v for _, v in levels])
    return HeibergSenetaReport(margin <= tol, margin, tol, tuple(levels))


@dataclass(frozen=True)
class BoundednessReport:
    interval: tuple[float, float]
    values: tuple[tuple[float, float], ...]
    maximum: float
    bounded: bool


def boundedness_scan(
    h: Callable[[float], float],
    phi: FlowFunc,
    psi: Callable[[float], float],
    interval: tuple[float, float],
    grid: GridSpec | None = None,
    *,
    n_points: int = 7,
    logger: logging.Logger | None = None,
) -> BoundednessReport:
    """Windowed sup-limits over a compact t-interval; bounded iff their maximum is finite."""
    a, b = interval
    p = phi.popa
    if not (p.in_G_plus(a) and a <= b):
        raise BadParamError(f"[{a}, {b}] must be a compact interval right of {p.rho_star}.")
    ts = np.linspace(a, b, n_points)
    values = tuple(
        (float(t), window_sup_limit(h, phi, psi, float(t), grid, logger=logger).value)
        for t in ts
    )
    maximum = max(value for _, value in values)
    return BoundednessReport((a, b), values, maximum, math.isfinite(maximum))


@dataclass(frozen=True)
class SampledFunction:
    """Cubic-spline interpolant of (t, value) samples; DomainError outside the sampled range."""
    ts: tuple[float, ...]
    values: tuple[float, ...]
    spline: CubicSpline = field(repr=False)

    @classmethod
    def from_samples(cls, samples: Sequence[tuple[float, float]]) -> SampledFunction:
        ordered = sorted(samples)
        ts = tuple(float(t) for t, _ in ordered)
        values = tuple(float(v) for _, v in ordered)
        if len(ts) < 2 or len(set(ts)) != len(ts):
            raise BadParamError("SampledFunction needs at least two distinct t values.")
        return cls(ts, values, CubicSpline(ts, values))

    def __call__(self, t: float) -> float:
        if not self.ts[0] <= t <= self.ts[-1]:
            raise DomainError(f"{t!r} is outside the sampled range [{self.ts[0]}, {self.ts[-1]}].")
        return float(self.spline(t))


def hom_residual(K_est: Callable[[float], float], p: PopaParams, u: float, v: float) -> float:
    """K(u ∘ v) − K(u) − K(v): zero for a homomorphism, ≤ 0 for a subadditive kernel."""
    return K_est(circ(p, u, v)) - K_est(u) - K_est(v)


def eta_subadditivity_residual(K_est: Callable[[float], float], p: PopaParams, u: float, v: float) -> float:
    """K(u ∘ v) − K(u) − η(u)K(v), the η-weighted form used for Ω†."""
    return K_est(circ(p, u, v)) - K_est(u) - eta(p, u) * K_est(v)
