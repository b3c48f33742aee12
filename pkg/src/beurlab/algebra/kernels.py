"""
Closed-form Goldie/Beurling kernels and functional-equation residuals.

Kernel kinds:
    eta           η_ρ(x) = 1 + ρx
    H_gamma       H_γ(x) = (e^{γx} − 1)/γ, H_0(x) = x
    K_rho_gamma   K_{ργ}(x) = ((1 + ρx)^γ − 1)/(ργ), log(1 + ρx)/ρ at γ = 0
    tau_eta       τ_η(x) = log(1 + ρx)/ρ, x at ρ = 0
    flow_rate_f   f(x) = (1 + ρx)^{1−γ}, e^{−γx} at ρ = 0
    exp_g         g(x) = (1 + ρx)^γ, e^{γx} at ρ = 0

Every kind is multiplied by the scale `c`.
"""


from __future__ import annotations
import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Literal, get_args

from .._exceptions import BadParamError, DomainError
from ..numerics import integrate_reciprocal
from ..realfunc import RealFunc
from ._exceptions import MissingRoleError, UnsupportedPairError
from .popa import PopaParams, circ


KernelKind = Literal["eta", "H_gamma", "K_rho_gamma", "tau_eta", "flow_rate_f", "exp_g"]

GAMMA_ZERO_SWITCH = 1e-7


@dataclass(frozen=True)
class KernelSpec:
    """A closed-form kernel c·k_{ρ,γ}.

    Attributes:
        kind (KernelKind): The kernel family.
        rho (float): Non-negative index; fixes the domain (ρ*, ∞) when positive.
        gamma (float): Exponent parameter (ignored by eta and tau_eta).
        c (float): Scale.
    """
    kind: KernelKind
    rho: float = 0.0
    gamma: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.kind not in get_args(KernelKind):
            raise BadParamError(f"Unknown kernel kind {self.kind!r}.")
        if not (math.isfinite(self.rho) and self.rho >= 0):
            raise BadParamError(f"rho must be a finite non-negative real, got {self.rho!r}.")
        if not (math.isfinite(self.gamma) and math.isfinite(self.c)):
            raise BadParamError("gamma and c must be finite.")

    @property
    def params(self) -> PopaParams:
        return PopaParams(self.rho)

    @property
    def lower(self) -> float:
        if self.kind == "H_gamma":
            return -math.inf
        return self.params.rho_star

    def __call__(self, x: float) -> float:
        return eval_kernel(self, x)

    def to_func(self) -> RealFunc:
        name = f"{self.kind}(rho={self.rho:g}, gamma={self.gamma:g}, c={self.c:g})"
        return RealFunc(self._value, lower=self.lower, name=name)

    def _value(self, x: float) -> float:
        rho, gamma = self.rho, self.gamma
        match self.kind:
            case "eta":
                value = 1.0 + rho * x
            case "H_gamma":
                value = _h_gamma(gamma, x)
            case "K_rho_gamma":
                if rho == 0:
                    value = x
                else:
                    log_eta = math.log1p(rho * x)
                    if abs(gamma) < GAMMA_ZERO_SWITCH:
                        value = log_eta / rho * (1.0 + 0.5 * gamma * log_eta)
                    else:
                        value = math.expm1(gamma * log_eta) / (rho * gamma)
            case "tau_eta":
                value = x if rho == 0 else math.log1p(rho * x) / rho
            case "flow_rate_f":
                value = math.exp(-gamma * x) if rho == 0 else math.exp((1.0 - gamma) * math.log1p(rho * x))
            case "exp_g":
                value = math.exp(gamma * x) if rho == 0 else math.exp(gamma * math.log1p(rho * x))
        return self.c * value


def _h_gamma(gamma: float, x: float) -> float:
    if abs(gamma) < GAMMA_ZERO_SWITCH:
        return x * (1.0 + 0.5 * gamma * x)
    return math.expm1(gamma * x) / gamma


def eval_kernel(spec: KernelSpec, x: float) -> float:
    """Evaluate a closed-form kernel.

    Raises:
        DomainError: x ≤ ρ* for ρ > 0, or the value overflows.
    """
    return spec.to_func()(x)


def kernel_func(kind: KernelKind, rho: float = 0.0, gamma: float = 0.0, c: float = 1.0) -> RealFunc:
    return KernelSpec(kind, rho, gamma, c).to_func()


def tau_numeric(
    f: Callable[[float], float],
    x: float,
    base: float = 0.0,
    logger: logging.Logger | None = None,
) -> float:
    """The occupation time ∫_base^x dw/f(w) by adaptive quadrature.

    Raises:
        SingularIntegrandError: f vanishes or changes sign between base and x.
        NonconvergenceError: The quadrature stalls.
    """
    return integrate_reciprocal(f, base, x, epsrel=1e-12, logger=logger)


class EquationId(str, Enum):
    GS = "GS"
    BFE = "BFE"
    GFE = "GFE"
    GBE_P = "GBE_P"
    GBE_GROUP = "GBE_GROUP"
    CBE = "CBE"
    GFI = "GFI"

    @property
    def is_inequality(self) -> bool:
        return self is EquationId.GFI


REQUIRED_ROLES: dict[EquationId, tuple[str, ...]] = {
    EquationId.GS: ("h",),
    EquationId.BFE: ("eta",),
    EquationId.GFE: ("K",),
    EquationId.GBE_P: ("K", "kappa", "h", "g"),
    EquationId.GBE_GROUP: ("K", "h", "g"),
    EquationId.CBE: ("f", "h"),
    EquationId.GFI: ("K",),
}


def _exponential_weight(
    eq: EquationId,
    funcs: Mapping[str, Callable[[float], float]],
    gamma: float | None,
) -> Callable[[float], float]:
    if "g" in funcs:
        return funcs["g"]
    if gamma is None:
        raise MissingRoleError(f"{eq.value} needs role 'g' or a gamma value.")
    return lambda u: math.exp(gamma * u)


def fe_residual(
    eq: EquationId | str,
    funcs: Mapping[str, Callable[[float], float]],
    u: float,
    v: float,
    *,
    gamma: float | None = None,
) -> float:
    """Signed residual LHS − RHS of a functional equation at (u, v).

    Roles: h (GS, GBE, CBE), eta (BFE), K, kappa, g (GBE), f (CBE). GFE and GFI
    take e^{γ·} from role g or from `gamma`. For GFI the result is the slack
    max(0, LHS − RHS), so 0 means the inequality holds.

    Raises:
        MissingRoleError: A required role is absent.
        DomainError: An argument leaves a function's domain.
    """
    eq = EquationId(eq)
    for role in REQUIRED_ROLES[eq]:
        if role not in funcs:
            raise MissingRoleError(f"{eq.value} needs role {role!r}.")
    match eq:
        case EquationId.GS:
            h = funcs["h"]
            return h(u + v * h(u)) - h(u) * h(v)
        case EquationId.BFE:
            eta = funcs["eta"]
            return eta(u + v * eta(u)) - eta(u) * eta(v)
        case EquationId.GFE | EquationId.GFI:
            K = funcs["K"]
            g = _exponential_weight(eq, funcs, gamma)
            difference = K(u + v) - (g(u) * K(v) + K(u))
            return max(0.0, difference) if eq.is_inequality else difference
        case EquationId.GBE_P:
            K, kappa, h, g = funcs["K"], funcs["kappa"], funcs["h"], funcs["g"]
            return K(v + u * h(v)) - (K(v) + kappa(u) * g(v))
        case EquationId.GBE_GROUP:
            K, h, g = funcs["K"], funcs["h"], funcs["g"]
            return K(v + u * h(v)) - (K(v) + K(u) * g(v))
        case EquationId.CBE:
            f, h = funcs["f"], funcs["h"]
            return f(v + u * h(v)) - f(u) * f(v)
    raise AssertionError(eq)


def solve_gbe_kernel(h: KernelSpec, g: KernelSpec, c: float = 1.0) -> KernelSpec:
    """The solution kernel c·τ_{h/g} of the Goldie–Beurling equation.

    Returns c·H_γ when ρ = 0 and c·K_{ργ} when ρ > 0.

    Raises:
        UnsupportedPairError: h is not η_ρ or g is not the matching e^{γ·} / η_ρ^γ.
    """
    if h.kind != "eta" or h.c != 1.0:
        raise UnsupportedPairError(f"h must be the unscaled eta kernel, got {h!r}.")
    if g.kind != "exp_g" or g.c != 1.0 or g.rho != h.rho:
        raise UnsupportedPairError(f"g must be the unscaled exp_g kernel with rho={h.rho}, got {g!r}.")
    if h.rho == 0:
        return KernelSpec("H_gamma", 0.0, g.gamma, c)
    return KernelSpec("K_rho_gamma", h.rho, g.gamma, c)


def g_multiplicativity_residual(g: Callable[[float], float], p: PopaParams, u: float, v: float) -> float:
    """g(u ∘ v) − g(u)g(v)."""
    return g(circ(p, u, v)) - g(u) * g(v)


def three_term_residual(
    K: Callable[[float], float],
    g: Callable[[float], float],
    p: PopaParams,
    u: float,
    v: float,
    w: float,
) -> float:
    """K(u∘v∘w) − [K(u)g(v∘w) + K(v)g(w) + K(w)], the iterated Goldie–Beurling equation."""
    vw = circ(p, v, w)
    return K(circ(p, u, vw)) - (K(u) * g(vw) + K(v) * g(w) + K(w))
