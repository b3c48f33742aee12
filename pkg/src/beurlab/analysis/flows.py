"""
Self-neglecting and self-equivarying auxiliary functions and their flows.

Classes:
    FlowFunc: An auxiliary φ with its family tag and declared η-index.
    TauTable: Cumulative occupation times on log-spaced knots.
    TimeChange: τ_φ, its inverse and g = φ∘τ_φ⁻¹ from a base point.

Functions:
    make_function(family, params) -> FlowFunc: The function registry.
    eta_x(phi, x, t) -> float: φ(x + tφ(x))/φ(x).
    tau_phi(phi, x, base) -> float: ∫_base^x dw/φ(w).
    tau_phi_inverse(phi, y, base) -> float: Monotone inversion of tau_phi.
    time_change(U, phi, base) -> (TimeChange, V): V = U∘τ_φ⁻¹.
    prop1_residual(phi, x, s) -> float: Occupation time of a flow step against τ_η(s).
    lemma1_extension(phi, x, s): η_x(s) left of the origin, or a domain breach.
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .._exceptions import BadParamError, DomainError
from .._null_logger import get_null_logger
from ..algebra.kernels import KernelSpec, tau_numeric
from ..algebra.popa import PopaParams
from ..exprlang import compile_expression
from ..numerics import RangeError, bracket_increasing, invert_increasing
from ..realfunc import RealFunc
from ._exceptions import UnknownFamilyError


FlowFamily = Literal["constant", "power", "log", "linear", "linear_plus_root", "expression"]

TAU_KNOTS = 1024
TAU_UPPER = 1e18


@dataclass(frozen=True)
class FlowFunc:
    """An auxiliary function φ > 0.

    Attributes:
        func (RealFunc): φ itself; its domain governs every breach check.
        domain_min (float): Default base point and left end of scans.
        declared_rho (float | None): The claimed η-index, None when unknown.
        family (str): Registry family tag.
        params (tuple[float, ...]): Family parameters.
    """
    func: RealFunc
    domain_min: float = 1.0
    declared_rho: float | None = None
    family: str = "expression"
    params: tuple[float, ...] = ()

    def __call__(self, x: float) -> float:
        return self.func(x)

    @property
    def popa(self) -> PopaParams:
        return PopaParams(self.declared_rho or 0.0)

    @property
    def label(self) -> str:
        if self.family == "expression":
            return self.func.name
        return f"{self.family}({', '.join(f'{p:g}' for p in self.params)})"


_FAMILIES: dict[str, Callable[..., FlowFunc]] = {}


def family(name: str):
    """Register a factory in the function registry under `name`."""
    def decorator(factory):
        _FAMILIES[name] = factory
        return factory
    return decorator


def families() -> tuple[str, ...]:
    """Names of the registered families, without `expression`."""
    return tuple(sorted(_FAMILIES))


def _arity(name: str, params: Sequence[float], count: int) -> None:
    if len(params) != count:
        raise BadParamError(f"Family {name!r} takes {count} parameter(s), got {len(params)}.")


@family("constant")
def _constant(params: Sequence[float]) -> FlowFunc:
    _arity("constant", params, 1)
    (k,) = params
    if not k > 0:
        raise BadParamError(f"constant phi needs k > 0, got {k!r}.")
    return FlowFunc(RealFunc.constant(k, name=f"{k:g}"), 1.0, 0.0, "constant", (k,))


@family("power")
def _power(params: Sequence[float]) -> FlowFunc:
    _arity("power", params, 1)
    (alpha,) = params
    if not 0 < alpha < 1:
        raise BadParamError(f"power phi needs 0 < alpha < 1, got {alpha!r}.")
    func = RealFunc(lambda x: x ** alpha, lower=0.0, name=f"x^{alpha:g}")
    return FlowFunc(func, 1.0, 0.0, "power", (alpha,))


@family("log")
def _log(params: Sequence[float]) -> FlowFunc:
    _arity("log", params, 0)
    return FlowFunc(RealFunc(math.log, lower=1.0, name="log(x)"), math.e, 0.0, "log", ())


@family("linear")
def _linear(params: Sequence[float]) -> FlowFunc:
    _arity("linear", params, 1)
    (rho,) = params
    if not (math.isfinite(rho) and rho > 0):
        raise BadParamError(f"linear phi needs rho > 0, got {rho!r}.")
    func = RealFunc(lambda x: rho * x, lower=0.0, name=f"{rho:g}*x")
    return FlowFunc(func, 1.0, rho, "linear", (rho,))


@family("linear_plus_root")
def _linear_plus_root(params: Sequence[float]) -> FlowFunc:
    _arity("linear_plus_root", params, 1)
    (rho,) = params
    if not (math.isfinite(rho) and rho >= 0):
        raise BadParamError(f"linear_plus_root phi needs rho >= 0, got {rho!r}.")
    func = RealFunc(lambda x: rho * x + math.sqrt(x), lower=0.0, name=f"{rho:g}*x+sqrt(x)")
    return FlowFunc(func, 1.0, rho, "linear_plus_root", (rho,))


def make_function(
    family: FlowFamily | str,
    params: Sequence[float] = (),
    *,
    source: str | None = None,
    bindings: dict[str, float] | None = None,
    lower: float = 0.0,
    domain_min: float = 1.0,
    declared_rho: float | None = None,
) -> FlowFunc:
    """Build an auxiliary function from the registry.

    Families: constant [k], power [α] with 0 < α < 1, log, linear [ρ],
    linear_plus_root [ρ] and expression (with `source`, an expression in x,
    defined on (lower, ∞)).

    Raises:
        UnknownFamilyError: The family is not registered.
        BadParamError: Parameters outside the family's range.
    """
    params = tuple(float(p) for p in params)
    if family == "expression":
        if not source:
            raise BadParamError("The expression family needs a source string.")
        func = compile_expression(source, bindings, lower=lower)
        return FlowFunc(func, domain_min, declared_rho, "expression", params)
    try:
        factory = _FAMILIES[family]
    except KeyError:
        raise UnknownFamilyError(
            f"Unknown function family {family!r}; known: {', '.join(sorted(_FAMILIES))}, expression."
        ) from None
    return factory(params)


def eta_x(phi: FlowFunc, x: float, t: float) -> float:
    """The ratio φ(x + tφ(x))/φ(x); exactly 1 at t = 0.

    Raises:
        DomainError: x or x + tφ(x) leaves φ's domain.
    """
    phi_x = phi(x)
    if t == 0:
        return 1.0
    return phi(x + t * phi_x) / phi_x


def tau_phi(phi: FlowFunc, x: float, base: float | None = None) -> float:
    """Signed occupation time ∫_base^x dw/φ(w); base defaults to φ's domain_min."""
    return tau_numeric(phi.func, x, phi.domain_min if base is None else base)


def _default_base(phi: FlowFunc, base: float | None) -> float:
    return phi.domain_min if base is None else base


@dataclass(frozen=True)
class TauTable:
    """τ_φ sampled on log-spaced knots from the base point.

    The table seeds brackets for inversion; every value it returns is refined
    by an exact quadrature from the nearest knot.
    """
    phi: FlowFunc
    base: float
    knots: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @classmethod
    def build(
        cls,
        phi: FlowFunc,
        base: float,
        upper: float = TAU_UPPER,
        n_knots: int = TAU_KNOTS,
        logger: logging.Logger | None = None,
    ) -> TauTable:
        logger = logger or get_null_logger()
        offsets = np.geomspace(1e-6, upper - base, n_knots - 1)
        knots = np.concatenate(([base], base + offsets))
        values = np.zeros(n_knots)
        for i in range(1, n_knots):
            values[i] = values[i - 1] + tau_numeric(phi.func, knots[i], knots[i - 1])
        logger.debug("tau table for %s from %g: tau(%g) = %g", phi.label, base, knots[-1], values[-1])
        return cls(phi, base, knots, values)

    def tau(self, x: float) -> float:
        if not self.base <= x <= self.knots[-1]:
            return tau_numeric(self.phi.func, x, self.base)
        i = int(np.searchsorted(self.knots, x, side="right")) - 1
        i = min(i, len(self.knots) - 1)
        return float(self.values[i]) + tau_numeric(self.phi.func, x, float(self.knots[i]))

    def inverse(self, y: float) -> float:
        if y < 0:
            lo, hi = bracket_increasing(self.tau, y, self.base, lower_bound=self.phi.func.lower)
            return invert_increasing(self.tau, y, lo, hi)
        if y > self.values[-1]:
            raise RangeError(f"{y!r} exceeds tau at the bracketing limit {self.knots[-1]:g}.")
        i = int(np.searchsorted(self.values, y, side="right")) - 1
        if self.values[i] == y:
            return float(self.knots[i])
        return invert_increasing(self.tau, y, float(self.knots[i]), float(self.knots[i + 1]))


def tau_phi_inverse(
    phi: FlowFunc,
    y: float,
    base: float | None = None,
    *,
    upper_bound: float = TAU_UPPER,
    logger: logging.Logger | None = None,
) -> float:
    """Solve tau_phi(x) = y by exponential bracketing and Brent refinement.

    Raises:
        RangeError: y is not reached inside φ's domain below `upper_bound`.
    """
    base = _default_base(phi, base)

    def tau(x: float) -> float:
        return tau_numeric(phi.func, x, base)

    lo, hi = bracket_increasing(
        tau, y, base, lower_bound=phi.func.lower, upper_bound=upper_bound, logger=logger
    )
    return invert_increasing(tau, y, lo, hi)


@dataclass(frozen=True)
class TimeChange:
    """The occupation-time change of variables for φ from `base`.

    Attributes:
        phi (FlowFunc): The auxiliary function.
        base (float): τ_φ(base) = 0.
        table (TauTable): Knot cache built at construction.
    """
    phi: FlowFunc
    base: float
    table: TauTable = field(repr=False)

    @classmethod
    def build(cls, phi: FlowFunc, base: float | None = None, logger: logging.Logger | None = None) -> TimeChange:
        base = _default_base(phi, base)
        return cls(phi, base, TauTable.build(phi, base, logger=logger))

    @property
    def tau(self) -> RealFunc:
        return RealFunc(self.table.tau, lower=self.phi.func.lower, name=f"tau[{self.phi.label}]")

    @property
    def tau_inv(self) -> RealFunc:
        return RealFunc(self.table.inverse, name=f"tau_inv[{self.phi.label}]")

    @property
    def g(self) -> RealFunc:
        return RealFunc(lambda y: self.phi(self.table.inverse(y)), name=f"g[{self.phi.label}]")

    def transform(self, U: Callable[[float], float], name: str = "V") -> RealFunc:
        return RealFunc(lambda y: U(self.table.inverse(y)), name=name)


def time_change(
    U: Callable[[float], float],
    phi: FlowFunc,
    base: float | None = None,
    logger: logging.Logger | None = None,
) -> tuple[TimeChange, RealFunc]:
    """Return the time change of φ and V = U∘τ_φ⁻¹.

    Moving averages of U along φ become additive differences of V:
    (U(x + sφ(x)) − U(x))/φ(x) relates to (V(y + s) − V(y))/g(y).
    """
    change = TimeChange.build(phi, base, logger=logger)
    return change, change.transform(U)


def prop1_residual(phi: FlowFunc, x: float, s: float) -> float:
    """[τ_φ(x + sφ(x)) − τ_φ(x)] − τ_η(s) with η the declared index of φ.

    The occupation time of the step is integrated directly from x, so the
    residual does not depend on a base point.
    """
    step_time = tau_numeric(phi.func, x + s * phi(x), x)
    return step_time - KernelSpec("tau_eta", rho=phi.declared_rho or 0.0)(s)


def lemma1_extension(phi: FlowFunc, x: float, s: float) -> tuple[Literal["value", "breach"], float | None]:
    """η_x(s), or a breach marker when x + sφ(x) exits φ's domain."""
    try:
        return "value", eta_x(phi, x, s)
    except DomainError:
        return "breach", None
