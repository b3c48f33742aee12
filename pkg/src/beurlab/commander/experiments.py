"""
The registered experiments behind `beurlab <command>`.

Every handler reads its keys from the ExperimentConfig, runs one module of
the toolkit and returns an ExperimentReport. Handlers raise ConfigError for
bad keys; any other BeurlabError is turned into an aborted report by the
commander.
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Sequence

import numpy as np

from .._exceptions import BeurlabError
from ..algebra import (
    EquationId,
    KernelSpec,
    LocalContext,
    PopaParams,
    ResidualReport,
    check_prop2,
    circ,
    fe_residual,
    g_multiplicativity_residual,
    group_axiom_report,
    solve_gbe_kernel,
    tau_numeric,
    three_term_residual,
)
from ..algebra.kernels import GAMMA_ZERO_SWITCH
from ..analysis import (
    ConvolutionKernel,
    FlowFunc,
    LimitEstimate,
    SampledFunction,
    beck_sequence,
    boundedness_scan,
    box_kernel,
    corollary3_experiment,
    delta_ratio,
    estimate_limit,
    expression_kernel,
    fit_indices,
    gaussian_kernel,
    geometric_chain,
    geometric_closed_form,
    heiberg_seneta,
    hom_residual,
    iterate_recurrence,
    lemma3_anchor,
    membership_report,
    prop11_bounds,
    prop11_sandwich,
    prop11_table,
    prop1_residual,
    representation,
    riesz_mean,
    solve_recurrence,
    tauberian_experiment,
    theorem10_check,
    time_change,
    triangle_kernel,
    window_sup_limit,
)
from ..realfunc import RealFunc
from ..report import ExperimentReport, verdict_from_checks
from ._commander import experiment
from ._exceptions import ConfigError
from .config import ExperimentConfig


RESIDUAL_COLUMNS = ["suite", "identity", "samples", "max_abs", "max_scaled", "passed"]
LIMIT_COLUMNS = ["check", "t", "value", "error_proxy", "converged", "target", "abs_error"]
FIT_MODELS = ("c_log_eta", "c_linear", "c_H_gamma", "theorem8_rho_zero", "theorem8_rho_pos")


def _choice(cfg: ExperimentConfig, key: str, default: str, options: Sequence[str]) -> str:
    value = cfg.get_str(key, default)
    if value not in options:
        raise ConfigError(f"Key {key!r} must be one of {', '.join(options)}; got {value!r}.")
    return value


def _optional_function(cfg: ExperimentConfig, key: str) -> RealFunc | None:
    return cfg.get_function(key) if key in cfg else None


def _residual_rows(report: ExperimentReport, suite: str, residuals: ResidualReport, tol: float) -> bool:
    for entry in residuals.entries.values():
        report.add_row(suite, entry.identity, entry.samples, entry.max_abs, entry.max_scaled, entry.max_scaled < tol)
    return residuals.passed(tol)


def _limit_check(estimate: LimitEstimate, target: float | None, tol: float) -> bool | None:
    if not estimate.converged:
        return None
    if target is None:
        return True
    return abs(estimate.value - target) <= tol


def _limit_row(
    report: ExperimentReport,
    check: str,
    t: float,
    estimate: LimitEstimate,
    expected: RealFunc | None,
    tol: float,
) -> bool | None:
    target = expected(t) if expected is not None else None
    error = abs(estimate.value - target) if target is not None else None
    report.add_row(check, t, estimate.value, estimate.error_proxy, estimate.converged, target, error)
    return _limit_check(estimate, target, tol)


def _fit_rows(
    report: ExperimentReport,
    cfg: ExperimentConfig,
    phi: FlowFunc,
    samples: Sequence[tuple[float, float]],
    logger: logging.Logger,
) -> list[bool]:
    """Fit `fit_model` to the samples; `expected_<param>` keys are checked within `fit_tol`."""
    if "fit_model" not in cfg:
        return []
    model = _choice(cfg, "fit_model", "c_log_eta", FIT_MODELS)
    result = fit_indices(samples, phi.popa, model, logger=logger)  # type: ignore[arg-type]
    fit_tol = cfg.get_tol("fit_tol", 1e-6)
    report.tolerances["fit"] = fit_tol
    checks = []
    for name, value in result.params.items():
        key = f"expected_{name}"
        target = cfg.get_float(key) if key in cfg else None
        error = abs(value - target) if target is not None else None
        report.add_row(f"fit_{name}", None, value, result.rms, True, target, error)
        if error is not None:
            checks.append(error <= fit_tol)
    return checks


@experiment("popa-check")
def popa_check(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Group axioms of the Popa group and the localized arithmetic identities of φ."""
    rho = cfg.get_float("rho", 1.0)
    samples = cfg.get_int("samples", 1000)
    tol = cfg.get_tol("tol", 1e-12)
    local_tol = cfg.get_tol("local_tol", 1e-9)
    phi = cfg.get_flow("phi", "linear_plus_root(0.5)")
    x_values = cfg.get_list("x_values", (1e2, 1e4, 1e6))
    pairs = cfg.get_int("pairs", 100)
    m_max = cfg.get_int("m_max", 10)
    if samples < 1 or pairs < 1 or m_max < 1:
        raise ConfigError("samples, pairs and m_max must be positive.")

    report = ExperimentReport(
        "popa-check",
        list(RESIDUAL_COLUMNS),
        tolerances={"group": tol, "local": local_tol},
    )
    group = group_axiom_report(PopaParams(rho), samples, cfg.seed)
    group_ok = _residual_rows(report, "group", group, tol)

    rng = np.random.default_rng(cfg.seed)
    local = ResidualReport()
    for x in x_values:
        ctx = LocalContext(phi.func, x, phi.declared_rho or 0.0)
        for _ in range(pairs):
            a, b = rng.uniform(0.05, 2.0, 2)
            m = int(rng.integers(1, m_max + 1))
            local.merge(check_prop2(ctx, float(a), float(b), m))
    logger.debug("localized identities over %d points: worst %.3g", len(x_values), local.max_scaled)
    local_ok = _residual_rows(report, "local", local, local_tol)
    report.verdict = verdict_from_checks([group_ok, local_ok])
    return report


@experiment("kernel-check")
def kernel_check(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Functional-equation residuals of the closed-form kernels."""
    rho = cfg.get_float("rho", 1.0)
    gamma = cfg.get_float("gamma", 0.5)
    c = cfg.get_float("c", 1.0)
    pairs = cfg.get_int("pairs", 500)
    tol = cfg.get_tol("tol", 1e-12)
    quadrature_tol = cfg.get_tol("quadrature_tol", 1e-8)
    continuity_tol = cfg.get_tol("continuity_tol", 1e-6)
    if rho < 0:
        raise ConfigError(f"rho must be non-negative, got {rho!r}.")
    p = PopaParams(rho)

    h = KernelSpec("eta", rho)
    g = KernelSpec("exp_g", rho, gamma)
    K = solve_gbe_kernel(h, g, c)
    goldie = {"K": KernelSpec("H_gamma", 0.0, gamma, c).to_func(), "g": KernelSpec("exp_g", 0.0, gamma).to_func()}
    roles = {
        "h": h.to_func(),
        "eta": h.to_func(),
        "K": K.to_func(),
        "kappa": K.to_func(),
        "g": g.to_func(),
        "f": KernelSpec("flow_rate_f", rho, gamma).to_func(),
    }
    equations: list[tuple[EquationId, dict[str, Callable[[float], float]]]] = [
        (EquationId.GS, roles),
        (EquationId.BFE, roles),
        (EquationId.GBE_P, roles),
        (EquationId.GBE_GROUP, roles),
        (EquationId.CBE, roles),
        (EquationId.GFE, goldie),
        (EquationId.GFI, goldie),
    ]

    lower = max(-0.4, 0.5 * p.rho_star) if rho > 0 else -0.4
    rng = np.random.default_rng(cfg.seed)
    residuals = ResidualReport()
    for u, v, w in rng.uniform(lower, 2.0, (pairs, 3)):
        u, v, w = float(u), float(v), float(w)
        points = (u, v, w, circ(p, u, v), circ(p, v, w), circ(p, u, circ(p, v, w)))
        for eq, funcs in equations:
            local_points = points if funcs is roles else (u, v, u + v)
            scale = max(1.0, *(abs(fn(z)) for fn in funcs.values() for z in local_points))
            residuals.record_residual(eq.value, fe_residual(eq, funcs, u, v), scale, u=u, v=v)
        scale = max(1.0, *(abs(fn(z)) for fn in (roles["K"], roles["g"]) for z in points))
        residuals.record_residual("g_multiplicativity", g_multiplicativity_residual(roles["g"], p, u, v), scale, u=u, v=v)
        residuals.record_residual("three_term", three_term_residual(roles["K"], roles["g"], p, u, v, w), scale, u=u, v=v, w=w)
    report = ExperimentReport(
        "kernel-check",
        list(RESIDUAL_COLUMNS),
        config={"K": roles["K"].name},
        tolerances={"equations": tol, "quadrature": quadrature_tol, "continuity": continuity_tol},
    )
    equations_ok = _residual_rows(report, "equations", residuals, tol)

    quadrature = ResidualReport()
    tau_closed = KernelSpec("tau_eta", rho)
    for x in np.geomspace(1e-3, 1e3, 13):
        quadrature.record("tau_eta", tau_numeric(roles["eta"], float(x), 0.0, logger=logger), tau_closed(float(x)), x=float(x))
    quadrature_ok = _residual_rows(report, "quadrature", quadrature, quadrature_tol)

    continuity = ResidualReport()
    near_zero = 2.0 * GAMMA_ZERO_SWITCH
    for x in np.linspace(0.1, 2.0, 9):
        x = float(x)
        for kind in ("H_gamma", "K_rho_gamma"):
            at_zero = KernelSpec(kind, rho, 0.0)(x)
            for side in (-near_zero, near_zero):
                continuity.record(kind, KernelSpec(kind, rho, side)(x), at_zero, x=x, gamma=side)
    continuity_ok = _residual_rows(report, "continuity", continuity, continuity_tol)
    report.verdict = verdict_from_checks([equations_ok, quadrature_ok, continuity_ok])
    return report


@experiment("timechange")
def timechange(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Moving averages of U along φ as additive differences of V = U∘τ⁻¹."""
    phi = cfg.get_flow("phi", "linear(1)")
    U = cfg.get_function("U", "2*x")
    base = cfg.get_float("base", phi.domain_min)
    y_values = cfg.get_list("y_values", (1.0, 2.0, 5.0, 10.0, 20.0))
    s_values = cfg.get_list("s_values", (0.5, 1.0, 2.0, 3.0))
    tol = cfg.get_tol("tol", 1e-6)
    log_g_tol = cfg.get_tol("log_g_tol", 1e-9)
    rho = phi.declared_rho or 0.0
    if "c" in cfg:
        c = cfg.get_float("c")
    else:
        c = delta_ratio(U, phi, phi, cfg.grid().x_grid[-1], 1.0)

    change, V = time_change(U, phi, base, logger=logger)
    g = change.g
    target_kernel = KernelSpec("H_gamma", 0.0, rho, c)
    report = ExperimentReport(
        "timechange",
        ["check", "y", "s", "value", "target", "abs_error"],
        config={"phi": phi.label, "c": c, "base": base},
        tolerances={"ratio": tol, "log_g": log_g_tol},
    )
    last_y = y_values[-1]
    checks = []
    for y in y_values:
        V_y, g_y = V(y), g(y)
        log_g_y = math.log(g_y)
        for s in s_values:
            ratio = (V(y + s) - V_y) / g_y
            target = target_kernel(s)
            report.add_row("difference", y, s, ratio, target, abs(ratio - target))
            increment = math.log(g(y + s)) - log_g_y
            report.add_row("log_g", y, s, increment, rho * s, abs(increment - rho * s))
            if y == last_y:
                checks.append(abs(ratio - target) <= tol)
                checks.append(abs(increment - rho * s) <= log_g_tol)
    report.verdict = verdict_from_checks(checks)
    return report


@experiment("prop1")
def prop1(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Occupation time of a φ-step against τ_η, shrinking along x."""
    phi = cfg.get_flow("phi", "linear_plus_root(0.5)")
    x_values = cfg.get_list("x_values", (1e4, 1e6, 1e8))
    s_values = cfg.get_list("s_values", tuple(np.linspace(0.0, 2.0, 9)))
    tol = cfg.get_tol("tol", 0.01)
    report = ExperimentReport(
        "prop1",
        ["x", "s", "residual"],
        config={"phi": phi.label},
        tolerances={"residual": tol},
    )
    worst = []
    for x in x_values:
        residuals = [abs(prop1_residual(phi, x, s)) for s in s_values]
        for s, residual in zip(s_values, residuals):
            report.add_row(x, s, residual)
        worst.append(max(residuals))
    logger.debug("worst step residual along x: %s", worst)
    shrinking = all(later <= earlier for earlier, later in zip(worst, worst[1:]))
    report.verdict = verdict_from_checks([worst[-1] < tol, shrinking])
    return report


@experiment("limit")
def limit(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """lim over x of (F(x + tφ(x)) − F(x))/ψ(x) on the t-grid."""
    grid = cfg.grid()
    F = cfg.get_function("F", "log(x)")
    phi = cfg.get_flow("phi", "linear(1)")
    psi = cfg.get_function("psi", "1")
    expected = _optional_function(cfg, "expected")
    tol = cfg.get_tol("tol", 1e-6)
    report = ExperimentReport(
        "limit",
        list(LIMIT_COLUMNS),
        config={"phi": phi.label},
        tolerances={"limit": tol, "convergence": grid.tol},
    )
    checks: list[bool | None] = []
    samples = []
    for t in grid.t_grid:
        estimate = estimate_limit(F, phi, psi, t, grid, "lim", logger=logger)
        checks.append(_limit_row(report, "lim", t, estimate, expected, tol))
        if not estimate.converged:
            logger.warning("limit at t=%g did not converge (proxy %.3g)", t, estimate.error_proxy)
        samples.append((t, estimate.value))
    checks.extend(_fit_rows(report, cfg, phi, samples, logger))

    hom_pairs = cfg.get_int("hom_pairs", 0)
    if hom_pairs > 0:
        checks.append(_hom_check(report, cfg, phi, samples, hom_pairs))

    if cfg.get_str("membership", "no") == "yes":
        for t in grid.t_grid:
            membership = membership_report(F, phi, psi, t, grid, tol=cfg.get_tol("membership_tol", 0.01), logger=logger)
            for name, verdict in (("A_phi", membership.in_A_phi), ("A_u", membership.in_A_u), ("A_dagger", membership.in_A_dagger)):
                report.add_row(name, t, verdict, None, None, None, None)
        report.notes.append(grid.note)
    report.verdict = verdict_from_checks(checks)
    return report


def _hom_check(
    report: ExperimentReport,
    cfg: ExperimentConfig,
    phi: FlowFunc,
    samples: Sequence[tuple[float, float]],
    pairs: int,
) -> bool:
    """Homomorphism residual of the interpolated kernel on pairs whose product stays in the sampled range."""
    kernel = SampledFunction.from_samples(samples)
    p = phi.popa
    lo, hi = kernel.ts[0], kernel.ts[-1]
    hom_tol = cfg.get_tol("hom_tol", 1e-6)
    report.tolerances["hom"] = hom_tol
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    checked = 0
    for _ in range(100 * pairs):
        if checked == pairs:
            break
        u, v = (float(z) for z in rng.uniform(lo, hi, 2))
        if not lo <= circ(p, u, v) <= hi:
            continue
        worst = max(worst, abs(hom_residual(kernel, p, u, v)))
        checked += 1
    if checked == 0:
        raise ConfigError("No sampled pair keeps u∘v inside the t-grid; widen t_grid for hom_pairs.")
    report.add_row("hom_residual", checked, worst, None, True, 0.0, worst)
    return worst <= hom_tol


@experiment("limsup")
def limsup(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """limsup and liminf over x of the increment ratio on the t-grid."""
    grid = cfg.grid()
    F = cfg.get_function("F", "sin(x)")
    phi = cfg.get_flow("phi", "constant(1)")
    psi = cfg.get_function("psi", "1")
    expected = {"limsup": _optional_function(cfg, "expected_sup"), "liminf": _optional_function(cfg, "expected_inf")}
    tol = cfg.get_tol("tol", 0.01)
    report = ExperimentReport(
        "limsup",
        list(LIMIT_COLUMNS),
        config={"phi": phi.label},
        tolerances={"limit": tol, "convergence": grid.tol},
        notes=[grid.note],
    )
    checks = []
    for t in grid.t_grid:
        for mode in ("limsup", "liminf"):
            estimate = estimate_limit(F, phi, psi, t, grid, mode, logger=logger)
            checks.append(_limit_row(report, mode, t, estimate, expected[mode], tol))
    report.verdict = verdict_from_checks(checks)
    return report


@experiment("hdagger")
def hdagger(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Windowed sup-limits H† (ψ ≡ 1) or Ω† (ψ = φ) with an optional boundedness scan."""
    grid = cfg.grid()
    h = cfg.get_function("h", "log(x)")
    phi = cfg.get_flow("phi", "linear(1)")
    psi = cfg.get_function("psi", "1")
    window = _choice(cfg, "window", "right", ("right", "left", "both"))
    extremum = _choice(cfg, "extremum", "sup", ("sup", "inf"))
    expected = _optional_function(cfg, "expected")
    tol = cfg.get_tol("tol", 0.01)
    report = ExperimentReport(
        "hdagger",
        list(LIMIT_COLUMNS),
        config={"phi": phi.label},
        tolerances={"limit": tol, "convergence": grid.tol},
        notes=[grid.note],
    )
    checks: list[bool | None] = []
    samples = []
    for t in grid.t_grid:
        estimate = window_sup_limit(h, phi, psi, t, grid, window=window, extremum=extremum, logger=logger)  # type: ignore[arg-type]
        checks.append(_limit_row(report, f"{window}_{extremum}", t, estimate, expected, tol))
        samples.append((t, estimate.value))
    checks.extend(_fit_rows(report, cfg, phi, samples, logger))
    if "interval" in cfg:
        interval = cfg.get_list("interval")
        if len(interval) != 2:
            raise ConfigError("interval needs exactly two numbers.")
        scan = boundedness_scan(h, phi, psi, (interval[0], interval[1]), grid, n_points=cfg.get_int("scan_points", 7), logger=logger)
        for t, value in scan.values:
            report.add_row("scan", t, value, None, None, None, None)
        report.add_row("bounded", None, scan.maximum, None, scan.bounded, None, None)
        checks.append(scan.bounded)
    report.verdict = verdict_from_checks(checks)
    return report


@experiment("heiberg-seneta")
def heiberg_seneta_check(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """limsup of H†(u) as u → 0 must not exceed zero."""
    grid = cfg.grid()
    h = cfg.get_function("h", "log(x)")
    phi = cfg.get_flow("phi", "linear(1)")
    tol = cfg.get_tol("tol", 0.01)
    levels = cfg.get_list("u_levels", (0.5, 0.25, 0.1, 0.05, 0.02))
    result = heiberg_seneta(h, phi, grid, u_levels=levels, tol=tol, logger=logger)
    report = ExperimentReport(
        "heiberg-seneta",
        ["check", "u", "value"],
        config={"phi": phi.label},
        tolerances={"margin": tol},
        notes=[grid.note],
    )
    for u, value in result.levels:
        report.add_row("level", u, value)
    report.add_row("margin", 0.0, result.margin)
    report.verdict = verdict_from_checks([result.holds])
    return report


def _kernel(cfg: ExperimentConfig, key: str, default: str) -> ConvolutionKernel:
    name = cfg.get_str(key, default)
    match name:
        case "gaussian":
            return gaussian_kernel()
        case "box":
            return box_kernel(cfg.get_float(f"{key}_width", 1.0))
        case "triangle":
            return triangle_kernel()
    support = None
    if f"{key}_support" in cfg:
        bounds = cfg.get_list(f"{key}_support")
        if len(bounds) != 2 or not bounds[0] < bounds[1]:
            raise ConfigError(f"{key}_support needs two increasing numbers.")
        support = (bounds[0], bounds[1])
    try:
        return expression_kernel(name, cfg.bindings(), support)
    except ConfigError:
        raise
    except BeurlabError as exc:
        raise ConfigError(f"Key {key!r}: {exc}") from exc


@experiment("tauberian")
def tauberian(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Beurling's Tauberian theorem: from K ∗ H → c∫K to G ∗ H → c∫G."""
    grid = cfg.grid()
    form = _choice(cfg, "form", "lebesgue", ("lebesgue", "stieltjes", "corollary3"))
    phi = cfg.get_flow("phi", "power(0.5)")
    c = cfg.get_float("c", 2.0)
    tol = cfg.get_tol("tol", 0.01)
    if form == "corollary3":
        U = cfg.get_function("U", "2*x")
        t_values = cfg.get_list("t_values", (1.0, math.sqrt(2.0)))
        return corollary3_experiment(U, phi, c, t_values, grid, tol=tol, logger=logger)
    K = _kernel(cfg, "K", "gaussian")
    G = _kernel(cfg, "G", "triangle")
    mesh = cfg.get_float("mesh") if "mesh" in cfg else None
    if form == "stieltjes":
        U = cfg.get_function("U", "2*x")
        return tauberian_experiment(K, G, phi, c, grid, U=U, tol=tol, mesh=mesh, logger=logger)
    H = cfg.get_function("H", "2+exp(-x)")
    return tauberian_experiment(K, G, phi, c, grid, H=H, tol=tol, logger=logger)


@experiment("beck")
def beck(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Beck-sequence estimates: the power bounds, the logarithmic increment bound, the recurrence and the chain."""
    check = _choice(cfg, "check", "prop11", ("prop11", "theorem10", "lemma3", "chain"))
    match check:
        case "prop11":
            return _prop11(cfg, logger)
        case "theorem10":
            phi = cfg.get_flow("phi", "linear(1)")
            h = cfg.get_function("h", "log(x)")
            u_grid = cfg.get_list("u_grid", tuple(np.geomspace(2.0, 1e4, 12)))
            return theorem10_check(h, phi, cfg.get_float("a0", 1.0), cfg.grid().x_grid, u_grid, logger=logger)
        case "lemma3":
            return _lemma3(cfg)
    return _chain(cfg)


def _prop11(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    phi = cfg.get_flow("phi", "linear(1)")
    rho = cfg.get_float("rho", phi.declared_rho or 0.0)
    a = cfg.get_float("a", 2.0)
    epsilon = cfg.get_float("epsilon", 0.5)
    x = cfg.get_float("x", 1e3)
    m_max = cfg.get_int("m_max", 30)
    u_grid = cfg.get_list("u_grid", tuple(np.geomspace(a, 1e9, 25)))
    bounds = prop11_bounds(rho, a, epsilon)
    report = ExperimentReport(
        "beck",
        ["check", "index", "value", "lower", "upper", "passed"],
        config={"phi": phi.label, "check": "prop11", "C_minus": bounds.C_minus, "C_plus": bounds.C_plus},
        notes=["sandwich_constant rows use (m+1)C_plus, which need not bound log u when rho(1+epsilon) > 1"],
    )
    checks = []
    for row in prop11_table(phi, bounds, x, m_max):
        report.add_row("ratio", row.m, row.ratio, 1 - epsilon, 1 + epsilon, row.ratio_ok)
        report.add_row("eta_power", row.m, row.eta_rho, row.lower, row.upper, row.bounds_ok)
        checks.extend([row.ratio_ok, row.bounds_ok])
    for row in prop11_sandwich(bounds, phi, x, u_grid):
        report.add_row("sandwich", row.m, row.log_u, row.lower, row.upper, row.holds)
        report.add_row("sandwich_constant", row.m, row.log_u, row.lower, row.upper_constant, row.constant_holds)
        checks.append(row.holds)
    logger.debug("power bounds at x=%g: %d checks", x, len(checks))
    report.verdict = verdict_from_checks(checks)
    return report


def _lemma3(cfg: ExperimentConfig) -> ExperimentReport:
    samples = cfg.get_int("samples", 100)
    n_max = cfg.get_int("n_max", 50)
    tol = cfg.get_tol("tol", 1e-10)
    rho = cfg.get_float("rho", 1.0)
    a = cfg.get_float("a", 2.0)
    epsilon = cfg.get_float("epsilon", 0.5)
    report = ExperimentReport(
        "beck",
        ["check", "index", "value", "target", "rel_error", "passed"],
        config={"check": "lemma3"},
        tolerances={"relative": tol},
    )
    checks = []
    rng = np.random.default_rng(cfg.seed)
    worst, worst_index = 0.0, 0
    drawn = 0
    while drawn < samples:
        b, r, v1 = float(rng.uniform(1.5, 4.0)), float(rng.uniform(0.5, 1.5)), float(rng.uniform(0.1, 2.0))
        if abs(b * r - 1.0) < 0.05:
            continue
        n = int(rng.integers(1, n_max + 1))
        closed, iterated = solve_recurrence(b, r, v1, n), iterate_recurrence(b, r, v1, n)
        error = abs(closed - iterated) / max(abs(iterated), 1e-300)
        if error >= worst:
            worst, worst_index = error, drawn
        drawn += 1
    report.add_row("recurrence", worst_index, worst, 0.0, worst, worst <= tol)
    checks.append(worst <= tol)
    for sign in (1, -1):
        anchor = lemma3_anchor(rho, a, epsilon, sign)  # type: ignore[arg-type]
        error = abs(anchor.value - anchor.closed_form) / max(abs(anchor.closed_form), 1e-300)
        report.add_row("anchor", sign, anchor.value, anchor.closed_form, error, error <= tol)
        checks.append(error <= tol)
    report.verdict = verdict_from_checks(checks)
    return report


def _chain(cfg: ExperimentConfig) -> ExperimentReport:
    q = cfg.get_float("q", 0.5)
    u = cfg.get_float("u", 1.0)
    n = cfg.get_int("n", 20)
    tol = cfg.get_tol("tol", 1e-12)
    report = ExperimentReport(
        "beck",
        ["check", "index", "value", "target", "abs_error", "passed"],
        config={"check": "chain"},
        tolerances={"closed_form": tol},
    )
    checks = []
    for k, value in enumerate(geometric_chain(q, u, n)):
        target = geometric_closed_form(q, u, k)
        error = abs(value - target) / max(1.0, abs(target))
        report.add_row("geometric", k, value, target, error, error <= tol)
        checks.append(error <= tol)
    if "phi" in cfg:
        phi = cfg.get_flow("phi")
        chain = beck_sequence(phi, cfg.get_float("x_start", phi.domain_min), u, n)
        for k, (value, product) in enumerate(zip(chain.values, chain.eta_products())):
            report.add_row("beck", k, value, product, None, None)
        report.config["divergent"] = chain.divergent
    report.verdict = verdict_from_checks(checks)
    return report


@experiment("represent")
def represent(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """The b + cx + ∫e representation, built forward or recovered from F."""
    grid = cfg.grid()
    direction = _choice(cfg, "direction", "forward", ("forward", "reverse"))
    mode = _choice(cfg, "mode", "difference", ("difference", "beck"))
    phi = cfg.get_flow("phi", "power(0.5)")
    options = dict(
        u_grid=cfg.get_list("u_grid", (0.5, 1.0, 2.0)),
        u0=cfg.get_float("u0", 0.01),
        mode=mode,
        beck_step=cfg.get_float("beck_step", 1.0),
        e_reference=_optional_function(cfg, "e_reference"),
        tol=cfg.get_tol("tol", 0.01),
        reconstruction_tol=cfg.get_tol("reconstruction_tol", 1e-3),
        logger=logger,
    )
    X = cfg.get_float("X", grid.x0)
    if direction == "forward":
        components = (cfg.get_float("b", 0.0), cfg.get_float("c", 2.0), cfg.get_function("e", "1/x"))
        return representation(phi, X, grid, components=components, **options)  # type: ignore[arg-type]
    F = cfg.get_function("F")
    c = cfg.get_float("c") if "c" in cfg else None
    return representation(phi, X, grid, F=F, c=c, **options)  # type: ignore[arg-type]


@experiment("riesz")
def riesz(cfg: ExperimentConfig, logger: logging.Logger) -> ExperimentReport:
    """Riesz means of U under λ = φ·exp τ_φ beside the moving-average companion."""
    grid = cfg.grid()
    U = cfg.get_function("U", "2*x")
    phi = cfg.get_flow("phi", "linear(1)")
    base = cfg.get_float("base", phi.domain_min)
    intervals = cfg.get_int("intervals", 4096)
    expected = _optional_function(cfg, "expected")
    compare = _choice(cfg, "compare", "mean", ("mean", "normalized"))
    tol = cfg.get_tol("tol", 0.01)
    report = ExperimentReport(
        "riesz",
        ["x", "mean", "normalized", "companion", "lambda_x", "target", "abs_error"],
        config={"phi": phi.label, "base": base, "compare": compare},
        tolerances={"mean": tol},
    )
    # the largest x decides
    check: bool | None = None
    for x in grid.x_grid:
        result = riesz_mean(U, phi, x, base, intervals)
        target = expected(x) if expected is not None else None
        value = result.mean if compare == "mean" else result.normalized
        error = abs(value - target) if target is not None else None
        report.add_row(x, result.mean, result.normalized, result.companion, result.lam_x, target, error)
        if error is not None:
            check = error <= tol
    logger.debug("riesz means over %d x-points", grid.count)
    report.verdict = verdict_from_checks([check])
    return report


__all__ = [
    "beck",
    "hdagger",
    "heiberg_seneta_check",
    "kernel_check",
    "limit",
    "limsup",
    "popa_check",
    "prop1",
    "represent",
    "riesz",
    "tauberian",
    "timechange",
]
