"""
Beurling convolutions and the Tauberian experiments built on them.

F ∗_φ H(x) = ∫ F(−t) H(x + tφ(x)) dt and F ∗_φ dU(x) = (1/φ(x)) ∫ F(−t) dU(x + tφ(x))
reduce to the classical convolutions for φ ≡ 1. A kernel K qualifies for the
Tauberian step when K̂ has no zero; `wiener_check` can only look for zeros on
a finite ξ-grid and its report says so.

Classes:
    ConvolutionKernel: An integrable kernel with its support and optional closed-form transform.
    WienerReport, ClassMNorm, BVReport

Functions:
    gaussian_kernel, box_kernel, triangle_kernel, indicator_kernel, expression_kernel,
    fourier_transform, convolve, convolve_stieltjes, wiener_check, class_m_norm,
    bv_sup_estimate, tauberian_experiment, corollary3_experiment
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .._exceptions import BadParamError, DomainError
from .._null_logger import get_null_logger
from ..exprlang import compile_expression
from ..numerics import fourier_integral, integrate, ordered_map, stieltjes_integral
from ..realfunc import RealFunc
from ..report import ExperimentReport, verdict_from_checks
from ._exceptions import HypothesisFailureError, WienerCheckFailureError
from .flows import FlowFunc
from .limits import GridSpec, delta_ratio


SIGNIFICANCE = 1e-12
MAX_SUPPORT_RADIUS = 2.0 ** 20
WIENER_XI_MAX = 32.0
WIENER_POINTS = 4097
WIENER_THRESHOLD = 1e-6
WIENER_NOTE = "a zero-free transform on a finite xi-grid does not certify a zero-free transform on the real line"
BV_GROWTH_FACTOR = 1.5


@dataclass(frozen=True)
class ConvolutionKernel:
    """An integrable kernel.

    Attributes:
        func (RealFunc): The kernel.
        support (tuple[float, float] | None): Compact support, None for rapid decay.
        transform (Callable[[float], complex] | None): Closed-form K̂(ξ) = ∫K(t)e^{−2πiξt}dt.
        name (str): Label used in reports.
        integrable (bool): Whether K is known to be in L1.
    """
    func: RealFunc
    support: tuple[float, float] | None = None
    transform: Callable[[float], complex] | None = None
    name: str = "K"
    integrable: bool = True

    def __call__(self, t: float) -> float:
        return self.func(t)

    def significant_support(self) -> tuple[float, float]:
        """The compact support, or the symmetric range where |K| exceeds 1e-12 of its peak."""
        if self.support is not None:
            return self.support
        probe = np.linspace(-1.0, 1.0, 65)
        peak = max(abs(self.func(float(t))) for t in probe)
        if peak == 0:
            return (-1.0, 1.0)
        radius = 1.0
        while radius < MAX_SUPPORT_RADIUS:
            edge = max(abs(self.func(r)) for r in (-radius, radius, -0.75 * radius, 0.75 * radius))
            if edge < SIGNIFICANCE * peak:
                return (-radius, radius)
            radius *= 2.0
        raise BadParamError(f"Kernel {self.name!r} does not decay within |t| < {MAX_SUPPORT_RADIUS:g}.")

    def integral(self) -> float:
        lo, hi = self.significant_support()
        return integrate(self.func, lo, hi)

    @classmethod
    def combine(cls, alpha: float, first: ConvolutionKernel, beta: float, second: ConvolutionKernel) -> ConvolutionKernel:
        """The kernel αF₁ + βF₂."""
        lo1, hi1 = first.significant_support()
        lo2, hi2 = second.significant_support()
        transform = None
        if first.transform is not None and second.transform is not None:
            transform = lambda xi: alpha * first.transform(xi) + beta * second.transform(xi)  # noqa: E731
        return cls(
            RealFunc.combine(alpha, first.func, beta, second.func),
            (min(lo1, lo2), max(hi1, hi2)),
            transform,
            f"{alpha:g}*{first.name}+{beta:g}*{second.name}",
            first.integrable and second.integrable,
        )


def gaussian_kernel() -> ConvolutionKernel:
    """e^{−πt²}, its own Fourier transform."""
    return ConvolutionKernel(
        RealFunc(lambda t: math.exp(-math.pi * t * t), name="gaussian"),
        None,
        lambda xi: complex(math.exp(-math.pi * xi * xi)),
        "gaussian",
    )


def box_kernel(width: float = 1.0) -> ConvolutionKernel:
    """1 on [−w/2, w/2]; K̂(ξ) = sin(πwξ)/(πξ) vanishes at ξ = k/w."""
    if not width > 0:
        raise BadParamError("box width must be positive.")
    half = 0.5 * width
    return ConvolutionKernel(
        RealFunc(lambda t: 1.0 if -half <= t <= half else 0.0, name="box"),
        (-half, half),
        lambda xi: complex(width if xi == 0 else math.sin(math.pi * width * xi) / (math.pi * xi)),
        "box",
    )


def triangle_kernel() -> ConvolutionKernel:
    """(1 − |t|)₊ with K̂(ξ) = sinc²(ξ)."""
    def transform(xi: float) -> complex:
        if xi == 0:
            return complex(1.0)
        return complex((math.sin(math.pi * xi) / (math.pi * xi)) ** 2)

    return ConvolutionKernel(
        RealFunc(lambda t: max(0.0, 1.0 - abs(t)), name="triangle"), (-1.0, 1.0), transform, "triangle"
    )


def indicator_kernel(t: float) -> ConvolutionKernel:
    """t^{−1}·1_{[0,t]}, whose convolution is a difference quotient of step t."""
    if not t > 0:
        raise BadParamError("indicator kernel needs t > 0.")
    return ConvolutionKernel(
        RealFunc(lambda s: 1.0 / t if 0.0 <= s <= t else 0.0, name=f"indicator({t:g})"),
        (0.0, t),
        None,
        f"indicator({t:g})",
    )


def expression_kernel(
    src: str,
    params: Mapping[str, float] | None = None,
    support: tuple[float, float] | None = None,
) -> ConvolutionKernel:
    """A kernel from the expression language; `x` is the kernel's variable."""
    return ConvolutionKernel(compile_expression(src, params, name=src), support, None, src)


def fourier_transform(K: ConvolutionKernel, xi: float) -> complex:
    """K̂(ξ) = ∫K(t)e^{−2πiξt}dt, closed form when the kernel carries one."""
    if K.transform is not None:
        return K.transform(xi)
    lo, hi = K.significant_support()
    return fourier_integral(K.func, lo, hi, xi)


def _reflected_range(F: ConvolutionKernel) -> tuple[float, float]:
    lo, hi = F.significant_support()
    return -hi, -lo


def _check_reach(H: Callable[[float], float], lowest: float, x: float) -> None:
    lower = getattr(H, "lower", -math.inf)
    if lowest < lower:
        raise DomainError(
            f"The convolution at x={x!r} reaches {lowest!r}, left of the domain bound {lower!r}."
        )


def convolve(
    F: ConvolutionKernel,
    H: Callable[[float], float],
    phi: FlowFunc,
    x: float,
    logger: logging.Logger | None = None,
) -> float:
    """The Beurling convolution ∫F(−t)H(x + tφ(x))dt over F's significant support.

    Raises:
        DomainError: The support reaches left of H's domain.
        IntegrationError, NonconvergenceError: From the quadrature.
    """
    phi_x = phi(x)
    lo, hi = _reflected_range(F)
    _check_reach(H, x + lo * phi_x, x)
    return integrate(lambda t: F(-t) * H(x + t * phi_x), lo, hi, logger=logger)


def convolve_stieltjes(
    F: ConvolutionKernel,
    U: Callable[[float], float],
    phi: FlowFunc,
    x: float,
    mesh: float | None = None,
    logger: logging.Logger | None = None,
) -> float:
    """(1/φ(x))∫F(−t) dU(x + tφ(x)) by refined midpoint Stieltjes sums.

    `mesh` sets the starting partition width; the default starts with 64
    panels over the support.

    Raises:
        NonconvergenceError: The sums do not settle, a sign U is not BV-like at this scale.
    """
    phi_x = phi(x)
    lo, hi = _reflected_range(F)
    _check_reach(U, x + lo * phi_x, x)
    n_start = 64 if mesh is None else max(1, math.ceil((hi - lo) / mesh))
    total = stieltjes_integral(lambda t: F(-t), lambda t: U(x + t * phi_x), lo, hi, n_start=n_start, logger=logger)
    return total / phi_x


@dataclass(frozen=True)
class WienerReport:
    passed: bool
    min_abs: float
    argmin_xi: float
    xi_max: float
    n_points: int
    note: str = WIENER_NOTE


def wiener_check(
    K: ConvolutionKernel,
    xi_max: float = WIENER_XI_MAX,
    n_points: int = WIENER_POINTS,
    threshold: float = WIENER_THRESHOLD,
) -> WienerReport:
    """Look for zeros of K̂ on a symmetric ξ-grid.

    Only the resolvable span is searched: the grid between the outermost
    points where |K̂| exceeds `threshold`. Past them, decay of K̂ cannot be
    told apart from a zero. The check passes iff |K̂| stays above `threshold`
    on that span; on failure `argmin_xi` is the offending ξ nearest 0.
    """
    xis = np.linspace(-xi_max, xi_max, n_points)
    magnitudes = np.array(ordered_map(lambda xi: abs(fourier_transform(K, float(xi))), xis))
    above = np.flatnonzero(magnitudes > threshold)
    if len(above) == 0:
        index = int(np.argmax(magnitudes))
        return WienerReport(False, float(magnitudes[index]), float(xis[index]), xi_max, n_points)
    span = np.arange(above[0], above[-1] + 1)
    low = span[magnitudes[span] <= threshold]
    if len(low) == 0:
        index = int(span[np.argmin(magnitudes[span])])
        return WienerReport(True, float(magnitudes[index]), float(xis[index]), xi_max, n_points)
    index = int(min(low, key=lambda i: (abs(xis[i]), -xis[i])))
    return WienerReport(False, float(magnitudes[index]), float(xis[index]), xi_max, n_points)


@dataclass(frozen=True)
class ClassMNorm:
    """Truncated ||f|| = sup_y Σ_n sup_{x∈[0,1]} |f(x + y + n)|; +inf when the terms do not decay."""
    value: float
    tail_proxy: float
    n_max: int


def class_m_norm(f: Callable[[float], float], n_max: int = 40, cell_points: int = 33) -> ClassMNorm:
    """Sweep y over a unit cell and n over [−n_max, n_max].

    The sum is reported as +inf when the outer half of the n-range carries more
    than a tenth of it.
    """
    ns = np.arange(-n_max, n_max + 1)
    xs = np.linspace(0.0, 1.0, cell_points)
    ys = np.linspace(0.0, 1.0, cell_points, endpoint=False)
    best_total, best_outer, tail = 0.0, 0.0, 0.0
    for y in ys:
        terms = np.array([max(abs(f(float(x + y + n))) for x in xs) for n in ns])
        total = float(terms.sum())
        if total >= best_total:
            best_total = total
            best_outer = float(terms[np.abs(ns) > n_max / 2].sum())
        tail = max(tail, float(terms[0]), float(terms[-1]))
    if best_total > 0 and best_outer > 0.1 * best_total:
        return ClassMNorm(math.inf, tail, n_max)
    return ClassMNorm(best_total, tail, n_max)


@dataclass(frozen=True)
class BVReport:
    """Estimated sup over (x, y) of the variation of y' ↦ U(x + y'φ(x))/φ(x) on [y, y+δ).

    Attributes:
        delta (float): Window length.
        M_estimate (float): Maximum over the grids.
        per_x (tuple[tuple[float, float], ...]): Maximum over y at each x.
        trend (str): "bounded", or "growing" when the per-x maxima grow along x.
        grid (str): Sampling description.
    """
    delta: float
    M_estimate: float
    per_x: tuple[tuple[float, float], ...]
    trend: Literal["bounded", "growing"]
    grid: str


def _variation(U: Callable[[float], float], phi_x: float, x: float, y: float, delta: float, mesh: float) -> float:
    n = max(1, math.ceil(delta / mesh))
    ys = np.linspace(y, y + delta, n + 1)
    values = np.array([U(x + float(s) * phi_x) for s in ys]) / phi_x
    return float(np.abs(np.diff(values)).sum())


def bv_sup_estimate(
    U: Callable[[float], float],
    phi: FlowFunc,
    delta: float,
    x_grid: Sequence[float],
    y_grid: Sequence[float],
    mesh: float,
) -> BVReport:
    """Partition-sum total variation of the localized charge over every (x, y) pair."""
    if not (delta > 0 and mesh > 0):
        raise BadParamError("delta and mesh must be positive.")

    def sup_over_y(x: float) -> float:
        phi_x = phi(x)
        return max(_variation(U, phi_x, x, float(y), delta, mesh) for y in y_grid)

    per_x = tuple((float(x), value) for x, value in zip(x_grid, ordered_map(sup_over_y, x_grid)))
    M = max(value for _, value in per_x)
    first, last = per_x[0][1], per_x[-1][1]
    growing = len(per_x) > 1 and last > BV_GROWTH_FACTOR * first and last >= M
    grid = f"{len(per_x)} x-points, {len(y_grid)} y-points, mesh {mesh:g}"
    return BVReport(delta, M, per_x, "growing" if growing else "bounded", grid)


TABLE_COLUMNS = ["table", "x", "value", "target", "abs_error"]


def _table(
    report: ExperimentReport,
    name: str,
    xs: Sequence[float],
    values: Sequence[float],
    target: float,
    tol: float,
) -> bool:
    for x, value in zip(xs, values):
        report.add_row(name, x, value, target, abs(value - target))
    return abs(values[-1] - target) <= tol


def tauberian_experiment(
    K: ConvolutionKernel,
    G: ConvolutionKernel,
    phi: FlowFunc,
    c_expected: float,
    grid: GridSpec | None = None,
    *,
    H: Callable[[float], float] | None = None,
    U: Callable[[float], float] | None = None,
    tol: float = 0.01,
    mesh: float | None = None,
    logger: logging.Logger | None = None,
) -> ExperimentReport:
    """From K ∗_φ H → c∫K conclude G ∗_φ H → c∫G, along the x-grid.

    Pass `H` for the Lebesgue form or `U` for the Stieltjes form. The
    hypothesis is checked first: a K̂ zero on the ξ-grid, a growing BV
    estimate or a hypothesis table missing c∫K aborts the experiment.

    Raises:
        WienerCheckFailureError: K̂ comes within the threshold of zero.
        HypothesisFailureError: The hypothesis does not hold numerically.
    """
    grid = grid or GridSpec()
    logger = logger or get_null_logger()
    if (H is None) == (U is None):
        raise BadParamError("Give exactly one of H and U.")
    wiener = wiener_check(K)
    if not wiener.passed:
        raise WienerCheckFailureError(
            f"|K^| of {K.name} drops to {wiener.min_abs:.3g} at xi={wiener.argmin_xi:g}; {wiener.note}."
        )
    xs = grid.x_grid
    if U is not None:
        bv = bv_sup_estimate(U, phi, 1.0, xs, np.linspace(-1.0, 1.0, 9), mesh or 1e-2)
        if bv.trend == "growing":
            raise HypothesisFailureError(f"The BV estimate grows along x ({bv.M_estimate:.3g}).")
        transform = lambda kernel, x: convolve_stieltjes(kernel, U, phi, x, mesh, logger)  # noqa: E731
        form = "stieltjes"
    else:
        transform = lambda kernel, x: convolve(kernel, H, phi, x, logger)  # noqa: E731
        form = "lebesgue"

    report = ExperimentReport(
        "tauberian",
        list(TABLE_COLUMNS),
        config={"K": K.name, "G": G.name, "phi": phi.label, "c": c_expected, "form": form},
        tolerances={"limit": tol, "wiener_threshold": WIENER_THRESHOLD},
        notes=[WIENER_NOTE],
    )
    hypothesis_target = c_expected * K.integral()
    hypothesis = ordered_map(lambda x: transform(K, x), xs)
    if not _table(report, "hypothesis", xs, hypothesis, hypothesis_target, tol):
        raise HypothesisFailureError(
            f"K * H ends at {hypothesis[-1]:.6g}, not within {tol} of {hypothesis_target:.6g}."
        )
    conclusion_target = c_expected * G.integral()
    conclusion = ordered_map(lambda x: transform(G, x), xs)
    concluded = _table(report, "conclusion", xs, conclusion, conclusion_target, tol)
    report.verdict = verdict_from_checks([concluded])
    logger.info("tauberian %s: %s", form, report.verdict)
    return report


def corollary3_experiment(
    U: Callable[[float], float],
    phi: FlowFunc,
    c_U: float,
    t_values: Sequence[float] = (1.0, math.sqrt(2.0)),
    grid: GridSpec | None = None,
    *,
    tol: float = 0.01,
    logger: logging.Logger | None = None,
) -> ExperimentReport:
    """Both sides of the moving-average equivalence for U, at two incommensurable t.

    Tables: Δ_t U/φ against c_U·t, and the Stieltjes convolution with
    t^{−1}·1_{[0,t]} against c_U.
    """
    grid = grid or GridSpec()
    xs = grid.x_grid
    report = ExperimentReport(
        "tauberian",
        ["table", "t", "x", "value", "target", "abs_error"],
        config={"phi": phi.label, "c": c_U, "t_values": list(t_values), "form": "corollary3"},
        tolerances={"limit": tol},
    )
    checks: list[bool] = []
    for t in t_values:
        differences = ordered_map(lambda x: delta_ratio(U, phi, phi, x, t), xs)
        kernel = indicator_kernel(t)
        averages = ordered_map(lambda x: convolve_stieltjes(kernel, U, phi, x, logger=logger), xs)
        for name, values, target in (("difference", differences, c_U * t), ("stieltjes", averages, c_U)):
            for x, value in zip(xs, values):
                report.add_row(name, t, x, value, target, abs(value - target))
            checks.append(abs(values[-1] - target) <= tol)
    report.verdict = verdict_from_checks(checks)
    return report
