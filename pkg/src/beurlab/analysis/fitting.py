"""
Least-squares fits of estimated limit kernels to their closed forms.

Models:
    c_log_eta           c·log(1 + ρt)
    c_H_gamma           c·H_γ(t)
    c_linear            c·t
    theorem8_rho_pos    [(1 + ρt)^{γ+1} − 1]/[ρ(1 + γ)], ρ given
    theorem8_rho_zero   c(1 − e^{−γt})/γ
"""


from __future__ import annotations
import logging
import math
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import least_squares

from .._exceptions import BadParamError, DomainError
from .._null_logger import get_null_logger
from ..algebra.kernels import KernelSpec
from ..algebra.popa import PopaParams
from ._exceptions import DegenerateFitError, NonSEWarning
from .flows import FlowFunc, eta_x
from .limits import GridSpec


FitModel = Literal["c_log_eta", "c_H_gamma", "c_linear", "theorem8_rho_pos", "theorem8_rho_zero"]

GAMMA_SCAN = np.linspace(-4.0, 4.0, 161)
NON_SE_RELATIVE_GAP = 0.1
OVERFLOW_RESIDUAL = 1e150


@dataclass(frozen=True)
class FitResult:
    """A fitted closed form.

    Attributes:
        model (FitModel): The fitted model.
        params (dict[str, float]): Fitted parameters (`c`, `gamma`).
        rms (float): Root-mean-square residual.
        n_samples (int): Number of samples fitted.
    """
    model: str
    params: dict[str, float]
    rms: float
    n_samples: int


def _validate(samples: Sequence[tuple[float, float]], p: PopaParams) -> tuple[np.ndarray, np.ndarray]:
    if len(samples) < 3:
        raise DegenerateFitError(f"A fit needs at least 3 samples, got {len(samples)}.")
    ts = np.array([float(t) for t, _ in samples])
    ys = np.array([float(v) for _, v in samples])
    if len(np.unique(ts)) != len(ts):
        raise DegenerateFitError("Sample t values must be distinct.")
    if np.any(ts <= p.rho_star):
        raise BadParamError(f"Sample t values must exceed the Popa origin {p.rho_star!r}.")
    if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(ys))):
        raise BadParamError("Samples must be finite.")
    return ts, ys


def _basis(kernel: Callable[[float], float], ts: np.ndarray) -> np.ndarray:
    return np.array([kernel(float(t)) for t in ts])


def _scale_fit(basis: np.ndarray, ys: np.ndarray) -> float:
    norm = float(basis @ basis)
    if norm == 0 or not math.isfinite(norm):
        raise DegenerateFitError("The design matrix is rank-deficient.")
    return float(basis @ ys) / norm


def _rms(residuals: np.ndarray) -> float:
    return float(np.sqrt(np.mean(residuals ** 2)))


def _fit_scale(model: str, kernel: Callable[[float], float], ts: np.ndarray, ys: np.ndarray) -> FitResult:
    basis = _basis(kernel, ts)
    c = _scale_fit(basis, ys)
    return FitResult(model, {"c": c}, _rms(c * basis - ys), len(ts))


def _fit_gamma(
    model: str,
    kernel_of: Callable[[float], Callable[[float], float]],
    ts: np.ndarray,
    ys: np.ndarray,
    *,
    with_scale: bool,
    logger: logging.Logger,
) -> FitResult:
    """Profile γ over a coarse scan, then polish (c, γ) or γ alone with least squares."""
    def model_values(gamma: float) -> np.ndarray | None:
        try:
            return _basis(kernel_of(gamma), ts)
        except DomainError:
            return None

    best: tuple[float, float, float] | None = None
    for gamma in GAMMA_SCAN:
        basis = model_values(float(gamma))
        if basis is None:
            continue
        try:
            c = _scale_fit(basis, ys) if with_scale else 1.0
        except DegenerateFitError:
            continue
        rms = _rms(c * basis - ys)
        if best is None or rms < best[0]:
            best = (rms, c, float(gamma))
    if best is None:
        raise DegenerateFitError(f"No admissible gamma for model {model!r}.")
    _, c0, gamma0 = best

    def residuals(theta: np.ndarray) -> np.ndarray:
        c, gamma = (theta[0], theta[1]) if with_scale else (1.0, theta[0])
        basis = model_values(float(gamma))
        if basis is None:
            return np.full(len(ts), OVERFLOW_RESIDUAL)
        return c * basis - ys

    start = np.array([c0, gamma0] if with_scale else [gamma0])
    result = least_squares(residuals, start, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    if np.linalg.matrix_rank(result.jac) < len(start):
        raise DegenerateFitError(f"The design matrix of {model!r} is rank-deficient.")
    logger.debug("%s fit: theta=%s after %d evaluations", model, result.x, result.nfev)
    params = {"c": float(result.x[0]), "gamma": float(result.x[1])} if with_scale else {"gamma": float(result.x[0])}
    return FitResult(model, params, _rms(result.fun), len(ts))


def fit_indices(
    samples: Sequence[tuple[float, float]],
    p: PopaParams,
    model: FitModel,
    logger: logging.Logger | None = None,
) -> FitResult:
    """Fit (t, value) samples to a closed-form kernel.

    Raises:
        DegenerateFitError: Fewer than 3 samples, repeated t or a rank-deficient design.
        BadParamError: A t at or left of ρ*, or theorem8_rho_pos with ρ = 0.
    """
    logger = logger or get_null_logger()
    ts, ys = _validate(samples, p)
    rho = p.rho
    match model:
        case "c_log_eta":
            return _fit_scale(model, lambda t: math.log1p(rho * t), ts, ys)
        case "c_linear":
            return _fit_scale(model, lambda t: t, ts, ys)
        case "c_H_gamma":
            return _fit_gamma(model, lambda g: KernelSpec("H_gamma", gamma=g), ts, ys, with_scale=True, logger=logger)
        case "theorem8_rho_zero":
            return _fit_gamma(model, lambda g: KernelSpec("H_gamma", gamma=-g), ts, ys, with_scale=True, logger=logger)
        case "theorem8_rho_pos":
            if rho <= 0:
                raise BadParamError("theorem8_rho_pos needs rho > 0.")
            return _fit_gamma(
                model, lambda g: KernelSpec("K_rho_gamma", rho, g + 1.0), ts, ys, with_scale=False, logger=logger
            )
    raise BadParamError(f"Unknown fit model {model!r}.")


@dataclass(frozen=True)
class RhoEstimate:
    """Slope of η_x(t) − 1 at the two largest grid points.

    Attributes:
        value (float): Estimate at the largest x.
        cross_check (float): Estimate at the second-largest x.
        error_proxy (float): |value − cross_check|.
        x (float): The x used for `value`.
    """
    value: float
    cross_check: float
    error_proxy: float
    x: float


def _slope_through_origin(phi: FlowFunc, x: float, ts: np.ndarray) -> float:
    ys = np.array([eta_x(phi, x, float(t)) - 1.0 for t in ts])
    return float(ts @ ys / (ts @ ts))


def fit_rho(phi: FlowFunc, grid: GridSpec | None = None, t_grid: Sequence[float] | None = None) -> RhoEstimate:
    """Estimate the η-index ρ of φ.

    Warns with NonSEWarning when the estimates at the two largest grid points
    differ by more than 10%, a sign that η_x has not settled to 1 + ρt.
    """
    grid = grid or GridSpec()
    ts = np.array(t_grid if t_grid is not None else grid.t_grid, dtype=float)
    if np.any(ts <= 0):
        raise BadParamError("fit_rho needs a t-grid in (0, inf).")
    xs = grid.x_grid
    if len(xs) < 2:
        raise BadParamError("fit_rho needs at least two x-grid points.")
    value = _slope_through_origin(phi, xs[-1], ts)
    cross_check = _slope_through_origin(phi, xs[-2], ts)
    gap = abs(value - cross_check)
    scale = max(abs(value), abs(cross_check))
    if scale > 0 and gap > NON_SE_RELATIVE_GAP * scale:
        warnings.warn(
            f"{phi.label}: rho estimates {value:.6g} and {cross_check:.6g} disagree; phi may not be self-equivarying.",
            NonSEWarning,
            stacklevel=2,
        )
    return RhoEstimate(value, cross_check, gap, xs[-1])
