"""
Beck sequences and the quantitative estimates built on them.

Classes:
    BeckChain: x_{n+1} = x_n + uφ(x_n) with a divergence diagnostic.
    Prop11Bounds: The m-indexed bounds on η(a^m) and the constants C_±.
    Prop11Row, SandwichRow, Lemma3Anchor, RieszMean

Functions:
    beck_sequence, geometric_chain, geometric_closed_form, prop11_bounds, prop11_table,
    prop11_sandwich, solve_recurrence, iterate_recurrence, lemma3_anchor,
    theorem10_check, representation, riesz_mean
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .._exceptions import BadParamError
from .._null_logger import get_null_logger
from ..algebra.kernels import tau_numeric
from ..algebra.popa import LocalContext, PopaParams
from ..numerics import integrate, integrate_sampled, ordered_map
from ..report import ExperimentReport, verdict_from_checks
from ._exceptions import ResonanceError
from .fitting import fit_indices
from .flows import FlowFunc
from .limits import GridSpec, delta_ratio


DIVERGENCE_RATIO = 1e6
RESONANCE_GUARD = 1e-12
BOUND_SLACK = 1e-12
STABLE_RELATIVE_CHANGE = 0.05


@dataclass(frozen=True)
class BeckChain:
    """A Beck sequence.

    Attributes:
        phi (FlowFunc): The auxiliary function.
        x0 (float): Starting point.
        step (float): u > 0.
        values (tuple[float, ...]): x_0, ..., x_n.
    """
    phi: FlowFunc
    x0: float
    step: float
    values: tuple[float, ...]

    @property
    def ratio(self) -> float:
        first, last = abs(self.values[0]), abs(self.values[-1])
        if first == 0:
            return math.inf if last > 0 else 1.0
        return last / first

    @property
    def divergent(self) -> bool:
        return self.ratio > DIVERGENCE_RATIO

    def eta_products(self) -> list[float]:
        """φ(x_m)/φ(x_0) as the running product of step ratios φ(x_{k+1})/φ(x_k)."""
        products = [1.0]
        for current, following in zip(self.values, self.values[1:]):
            products.append(products[-1] * self.phi(following) / self.phi(current))
        return products


def beck_sequence(phi: FlowFunc, x0: float, u: float, n: int) -> BeckChain:
    """The n + 1 terms of x_{k+1} = x_k + uφ(x_k).

    Raises:
        BadParamError: u ≤ 0 or n < 0.
        DomainError: A term leaves φ's domain.
    """
    if not u > 0 or n < 0:
        raise BadParamError(f"beck_sequence needs u > 0 and n >= 0, got u={u!r}, n={n!r}.")
    values = [float(x0)]
    for _ in range(n):
        x = values[-1]
        values.append(x + u * phi(x))
    return BeckChain(phi, float(x0), float(u), tuple(values))


def geometric_chain(q: float, u: float, n: int) -> list[float]:
    """u_{k+1} = u + q·u_k from u_0 = u, the Beck recursion in the multiplier for constant φ ≡ q."""
    values = [float(u)]
    for _ in range(n):
        values.append(u + q * values[-1])
    return values


def geometric_closed_form(q: float, u: float, n: int) -> float:
    if q == 1:
        return (n + 1) * u
    return (1.0 - q ** (n + 1)) * u / (1.0 - q)


@dataclass(frozen=True)
class Prop11Bounds:
    """Bounds for the localized powers a^m of a under an η_ρ-regular φ.

    Attributes:
        rho, a, epsilon (float): The parameters; a > 1, 0 < ε < 1, ρ > 0.
        eta_a (float): 1 + ρa.
        delta (float): ερa/η(a).
        C_minus (float): log[η(a(1−ε))/((ρ+2)(1−ε))], positive.
        C_plus (float): log[η(a(1+ε))/(ρ(1+ε))].
    """
    rho: float
    a: float
    epsilon: float
    eta_a: float
    delta: float
    C_minus: float
    C_plus: float

    def _eta(self, u: float) -> float:
        return 1.0 + self.rho * u

    def lower(self, m: int) -> float:
        e = self.epsilon
        return self._eta(self.a * (1 - e)) ** m / (1 - e) - e / (1 - e)

    def upper(self, m: int) -> float:
        e = self.epsilon
        return self._eta(self.a * (1 + e)) ** m / (1 + e) + e / (1 + e)

    def log_lower(self, m: int) -> float:
        return m * self.C_minus

    def log_upper(self, m: int) -> float:
        """(m+1)·log η(a(1+ε)) − log(ρ(1+ε)), which always bounds log u from above."""
        return (m + 1) * math.log(self._eta(self.a * (1 + self.epsilon))) - math.log(self.rho * (1 + self.epsilon))

    def log_upper_constant(self, m: int) -> float:
        return (m + 1) * self.C_plus


def prop11_bounds(rho: float, a: float, epsilon: float) -> Prop11Bounds:
    """Raises BadParamError unless a > 1, 0 < ε < 1, ρ > 0 and C_− > 0."""
    if not (rho > 0 and a > 1 and 0 < epsilon < 1):
        raise BadParamError(f"Need rho > 0, a > 1 and 0 < epsilon < 1; got {rho!r}, {a!r}, {epsilon!r}.")
    eta_a = 1.0 + rho * a
    C_minus = math.log((1.0 + rho * a * (1 - epsilon)) / ((rho + 2) * (1 - epsilon)))
    if not C_minus > 0:
        raise BadParamError(f"C_minus = {C_minus:.6g} is not positive for these parameters.")
    C_plus = math.log((1.0 + rho * a * (1 + epsilon)) / (rho * (1 + epsilon)))
    return Prop11Bounds(rho, a, epsilon, eta_a, epsilon * rho * a / eta_a, C_minus, C_plus)


@dataclass(frozen=True)
class Prop11Row:
    m: int
    iterate: float
    eta_x: float
    ratio: float
    ratio_ok: bool
    eta_rho: float
    lower: float
    upper: float
    bounds_ok: bool


def _within(lower: float, value: float, upper: float) -> bool:
    return lower - BOUND_SLACK * abs(lower) <= value <= upper + BOUND_SLACK * abs(upper)


def prop11_table(phi: FlowFunc, bounds: Prop11Bounds, x: float, m_max: int = 30) -> list[Prop11Row]:
    """Per m ≤ m_max: the localized power a^m at x, η_x(a^m) with its m-th-root ratio test, and the η(a^m) bounds."""
    ctx = LocalContext(phi.func, x, bounds.rho)
    rows = []
    iterate = 0.0
    for m in range(1, m_max + 1):
        iterate = iterate + bounds.a * ctx.eta_x(iterate)
        eta_local = ctx.eta_x(iterate)
        ratio = eta_local ** (1.0 / m) / bounds.eta_a
        eta_rho = 1.0 + bounds.rho * iterate
        lower, upper = bounds.lower(m), bounds.upper(m)
        rows.append(Prop11Row(
            m,
            iterate,
            eta_local,
            ratio,
            _within(1 - bounds.epsilon, ratio, 1 + bounds.epsilon),
            eta_rho,
            lower,
            upper,
            _within(lower, eta_rho, upper),
        ))
    return rows


@dataclass(frozen=True)
class SandwichRow:
    u: float
    m: int
    lower: float
    log_u: float
    upper: float
    upper_constant: float
    holds: bool
    constant_holds: bool


def prop11_sandwich(
    bounds: Prop11Bounds,
    phi: FlowFunc,
    x: float,
    u_grid: Sequence[float],
    m_max: int = 200,
) -> list[SandwichRow]:
    """For each u with a^m ≤ u < a^{m+1} at x: m·C_− ≤ log u ≤ the sharp upper bound.

    Raises:
        BadParamError: A u below a or beyond a^{m_max}.
    """
    ctx = LocalContext(phi.func, x, bounds.rho)
    powers = [0.0]
    for _ in range(m_max):
        powers.append(powers[-1] + bounds.a * ctx.eta_x(powers[-1]))
    rows = []
    for u in u_grid:
        if not bounds.a <= u < powers[-1]:
            raise BadParamError(f"u={u!r} must lie in [a, a^{m_max}) = [{bounds.a}, {powers[-1]:.6g}).")
        m = int(np.searchsorted(powers, u, side="right")) - 1
        log_u = math.log(u)
        lower, upper, upper_constant = bounds.log_lower(m), bounds.log_upper(m), bounds.log_upper_constant(m)
        rows.append(SandwichRow(
            float(u), m, lower, log_u, upper, upper_constant,
            lower <= log_u <= upper, lower <= log_u <= upper_constant,
        ))
    return rows


def solve_recurrence(b: float, r: float, v1: float, n: int) -> float:
    """v_n = r^n/(br − 1) + b^{1−n}(v_1 − r/(br − 1)), the solution of b·v_{n+1} − v_n = r^n.

    Raises:
        ResonanceError: |br − 1| < 1e-12.
        BadParamError: n < 1.
    """
    if n < 1:
        raise BadParamError(f"n must be at least 1, got {n!r}.")
    resonance = b * r - 1.0
    if abs(resonance) < RESONANCE_GUARD:
        raise ResonanceError(f"b*r = {b * r!r} is resonant.")
    return r ** n / resonance + b ** (1 - n) * (v1 - r / resonance)


def iterate_recurrence(b: float, r: float, v1: float, n: int) -> float:
    if n < 1:
        raise BadParamError(f"n must be at least 1, got {n!r}.")
    value = v1
    for k in range(1, n):
        value = (value + r ** k) / b
    return value


@dataclass(frozen=True)
class Lemma3Anchor:
    """The anchor v_1 − r/(br − 1) for b = η(a), v_1 = 1/(ρa), r = 1 ± δ.

    Attributes:
        value (float): Computed from the recurrence data.
        closed_form (float): ±ε/(η(a)ρa)/(1 ± ε).
    """
    b: float
    r: float
    v1: float
    value: float
    closed_form: float


def lemma3_anchor(rho: float, a: float, epsilon: float, sign: Literal[1, -1] = 1) -> Lemma3Anchor:
    bounds = prop11_bounds(rho, a, epsilon)
    b, v1 = bounds.eta_a, 1.0 / (rho * a)
    r = 1.0 + sign * bounds.delta
    resonance = b * r - 1.0
    if abs(resonance) < RESONANCE_GUARD:
        raise ResonanceError(f"b*r = {b * r!r} is resonant.")
    closed_form = sign * epsilon / (b * rho * a) / (1.0 + sign * epsilon)
    return Lemma3Anchor(b, r, v1, v1 - r / resonance, closed_form)


def theorem10_check(
    h: Callable[[float], float],
    phi: FlowFunc,
    a0: float,
    x_grid: Sequence[float],
    u_grid: Sequence[float],
    logger: logging.Logger | None = None,
) -> ExperimentReport:
    """Empirical C in h(x + uφ(x)) − h(x) ≤ C log u.

    C_x is the maximum over the u-grid at each x; the verdict is pass when
    the last two C_x differ by at most 5%.
    """
    logger = logger or get_null_logger()
    floor = max(a0, 1.0)
    if not u_grid or any(u <= floor for u in u_grid):
        raise BadParamError(f"u_grid must lie in ({floor}, inf).")

    def c_at(x: float) -> float:
        phi_x, h_x = phi(x), h(x)
        return max((h(x + u * phi_x) - h_x) / math.log(u) for u in u_grid)

    per_x = ordered_map(c_at, x_grid)
    report = ExperimentReport(
        "beck",
        ["check", "x", "C_x"],
        config={"phi": phi.label, "a0": a0, "u_grid": list(u_grid)},
        tolerances={"relative_change": STABLE_RELATIVE_CHANGE},
    )
    for x, value in zip(x_grid, per_x):
        report.add_row("theorem10", float(x), value)
    bounded = True
    if len(per_x) > 1:
        bounded = abs(per_x[-1] - per_x[-2]) <= STABLE_RELATIVE_CHANGE * max(1.0, abs(per_x[-2]))
    report.add_row("theorem10_C_hat", None, max(per_x))
    rho = phi.declared_rho or 0.0
    if rho > 0 and a0 > 1:
        try:
            bounds = prop11_bounds(rho, a0, 0.5)
        except BadParamError:
            report.notes.append("no positive C_minus for the reference constants at epsilon = 0.5")
        else:
            report.config["C_minus"] = bounds.C_minus
            report.config["C_plus"] = bounds.C_plus
    report.verdict = verdict_from_checks([bounded])
    logger.debug("increment bound C_x along x: %s", per_x)
    return report


Direction = Literal["forward", "reverse"]
ReverseMode = Literal["difference", "beck"]
REPRESENTATION_COLUMNS = ["check", "x", "u", "value", "target", "abs_error"]


def representation(
    phi: FlowFunc,
    X: float,
    grid: GridSpec | None = None,
    *,
    F: Callable[[float], float] | None = None,
    components: tuple[float, float, Callable[[float], float]] | None = None,
    c: float | None = None,
    u_grid: Sequence[float] = (0.5, 1.0, 2.0),
    u0: float = 0.01,
    mode: ReverseMode = "difference",
    beck_step: float = 1.0,
    e_reference: Callable[[float], float] | None = None,
    tol: float = 0.01,
    reconstruction_tol: float = 1e-3,
    logger: logging.Logger | None = None,
) -> ExperimentReport:
    """The Π_φ representation F(x) = b + cx + ∫_1^x e, in either direction.

    Forward (`components=(b, c, e)`): checks (F(x∘u) − F(x))/(uφ(x)) → c on the
    u-grid, then reconstructs the built F. Reverse (`F`, with `c` given or
    fitted at the largest x): extracts ê(x) = (F(x∘u₀) − F(x))/(u₀φ(x)) − c and
    reconstructs F̂ = F(X) + c(x − X) + ∫_X^x ê. With `mode="beck"` the
    integral is replaced by the sum along a Beck chain of step `beck_step`.

    Raises:
        FitError: c must be fitted and the fit is degenerate.
        DomainError: An evaluation leaves a domain.
    """
    grid = grid or GridSpec()
    logger = logger or get_null_logger()
    if (F is None) == (components is None):
        raise BadParamError("Give exactly one of F and components.")
    direction: Direction = "forward" if components is not None else "reverse"
    report = ExperimentReport(
        "represent",
        list(REPRESENTATION_COLUMNS),
        config={"phi": phi.label, "X": X, "direction": direction, "mode": mode, "u0": u0},
        tolerances={"ratio": tol, "reconstruction": reconstruction_tol},
    )
    checks: list[bool] = []
    xs = grid.x_grid

    if components is not None:
        b, c, e = components
        func = _built_function(b, c, e)
        # the ratio only tends to c, so the verdict reads the largest x
        tail_errors: list[float] = []
        for x in xs:
            tail_errors = []
            for u in u_grid:
                ratio = delta_ratio(func, phi, phi, x, u) / u
                report.add_row("ratio", x, u, ratio, c, abs(ratio - c))
                tail_errors.append(abs(ratio - c))
        checks.append(max(tail_errors) <= tol)
    else:
        func = F
        if c is None:
            samples = [(u, delta_ratio(func, phi, phi, xs[-1], u)) for u in u_grid]
            c = fit_indices(samples, PopaParams(0.0), "c_linear").params["c"]
            report.config["c_fitted"] = c
    report.config["c"] = c

    def e_hat(x: float) -> float:
        return delta_ratio(func, phi, phi, x, u0) / u0 - c

    F_X = func(X)
    if mode == "beck":
        reconstructed = _beck_reconstruction(phi, X, F_X, c, e_hat, xs, beck_step)
    else:
        reconstructed = [(x, F_X + c * (x - X) + integrate_sampled(e_hat, X, x)) for x in xs]
    for x, value in reconstructed:
        actual = func(x)
        error = abs(value - actual) / max(1.0, abs(actual))
        report.add_row(f"reconstruction_{mode}", x, u0, value, actual, error)
        checks.append(error <= reconstruction_tol)

    if e_reference is not None:
        for x in xs:
            estimate, reference = e_hat(x), e_reference(x)
            report.add_row("e_hat", x, u0, estimate, reference, abs(estimate - reference))
        checks.append(abs(e_hat(xs[-1]) - e_reference(xs[-1])) <= tol)
    report.verdict = verdict_from_checks(checks)
    logger.debug("representation %s/%s: %s", direction, mode, report.verdict)
    return report


def _built_function(b: float, c: float, e: Callable[[float], float]) -> Callable[[float], float]:
    return lambda x: b + c * x + integrate(e, 1.0, x)


MAX_BECK_STEPS = 200_000


def _beck_reconstruction(
    phi: FlowFunc,
    X: float,
    F_X: float,
    c: float,
    e_hat: Callable[[float], float],
    xs: Sequence[float],
    beck_step: float,
) -> list[tuple[float, float]]:
    """Sum c + ê along the Beck chain from X; one value at the first chain point past each x."""
    targets = sorted(x for x in xs if x > X)
    points: list[tuple[float, float]] = []
    x_k, value = X, F_X
    for _ in range(MAX_BECK_STEPS):
        if not targets:
            return points
        step = beck_step * phi(x_k)
        value += step * (c + e_hat(x_k))
        x_k += step
        while targets and x_k >= targets[0]:
            points.append((x_k, value))
            targets.pop(0)
    raise BadParamError(f"The Beck chain needs more than {MAX_BECK_STEPS} steps; raise beck_step.")


@dataclass(frozen=True)
class RieszMean:
    """(1/λ(x))∫_base^x U dλ with λ = φ·e^{τ_φ}, next to the moving-average companion.

    Attributes:
        mean (float): The mean with the 1/λ(x) factor.
        normalized (float): The same integral over λ(x) − λ(base).
        companion (float): (U(x + φ(x)) − U(x))/φ(x).
        lam_x (float): λ(x).
        lam_base (float): λ(base).
    """
    mean: float
    normalized: float
    companion: float
    lam_x: float
    lam_base: float


RIESZ_INTERVALS = 4096
GEOMETRIC_SPAN = 1e3


def riesz_mean(
    U: Callable[[float], float],
    phi: FlowFunc,
    x: float,
    base: float | None = None,
    n_intervals: int = RIESZ_INTERVALS,
) -> RieszMean:
    """Stieltjes quadrature of the Riesz mean with τ_φ measured from `base`.

    Midpoint sums on `n_intervals` panels (log-spaced when x/base exceeds
    1e3) are combined with the half-resolution sum by one Richardson step.
    """
    base = phi.domain_min if base is None else base
    if not x > base:
        raise BadParamError(f"x={x!r} must exceed base={base!r}.")
    if base > 0 and x / base > GEOMETRIC_SPAN:
        nodes = np.geomspace(base, x, n_intervals + 1)
    else:
        nodes = np.linspace(base, x, n_intervals + 1)
    increments = [tau_numeric(phi.func, float(hi), float(lo)) for lo, hi in zip(nodes, nodes[1:])]
    tau = np.concatenate(([0.0], np.cumsum(increments)))
    lam = np.array([phi(float(y)) for y in nodes]) * np.exp(tau)

    def midpoint_sum(stride: int) -> float:
        idx = np.arange(0, len(nodes), stride)
        mids = 0.5 * (nodes[idx][:-1] + nodes[idx][1:])
        weights = np.array([U(float(m)) for m in mids])
        return float(np.sum(weights * np.diff(lam[idx])))

    fine = midpoint_sum(1)
    total = fine + (fine - midpoint_sum(2)) / 3.0
    lam_x, lam_base = float(lam[-1]), float(lam[0])
    companion = delta_ratio(U, phi, phi, x, 1.0)
    return RieszMean(total / lam_x, total / (lam_x - lam_base), companion, lam_x, lam_base)
