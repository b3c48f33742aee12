"""
Popa circle groups and their localized operations.

For ρ ≥ 0 the Popa group G^ρ is ℝ∖{ρ*} with u ∘ v = u + v(1 + ρu), where
ρ* = −1/ρ is the Popa origin (−∞ when ρ = 0, giving (ℝ, +)). The map
η*_ρ carries G^ρ onto the multiplicative reals. Localizing at x with an
auxiliary φ gives s ∘_{φx} t = s + t·η_x(s) with η_x(s) = φ(x + sφ(x))/φ(x).

Classes:
    PopaParams: The index ρ with its origin and domain predicates.
    LocalContext: φ localized at x.
    ResidualReport: Per-identity worst residuals over a sample set.

Functions:
    circ, inv, eta, eta_star, eta_inverse, reflect: Group arithmetic.
    circ_local, iterate_local: Localized arithmetic.
    check_prop2: The localized arithmetic identities at one (x, a, b, m).
    group_axiom_report: Group, homomorphism, closure and reflection checks on seeded samples.
"""


from __future__ import annotations
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .._exceptions import BadParamError, DomainError
from ._exceptions import PopaOriginError, UndefinedForRhoZeroError


ORIGIN_GUARD = 1e-13


@dataclass(frozen=True)
class PopaParams:
    """The index ρ of a Popa group.

    Attributes:
        rho (float): Non-negative index.
    """
    rho: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho >= 0):
            raise BadParamError(f"rho must be a finite non-negative real, got {self.rho!r}.")

    @property
    def rho_star(self) -> float:
        """The Popa origin −1/ρ; −inf stands for the missing origin at ρ = 0."""
        return -1.0 / self.rho if self.rho > 0 else -math.inf

    def in_G_plus(self, u: float) -> bool:
        """Whether u lies in the positive half-group (ρ*, ∞)."""
        return math.isfinite(u) and u > self.rho_star

    def in_G_star(self, u: float) -> bool:
        """Whether u is a group element, i.e. off the Popa origin."""
        return math.isfinite(u) and not self.at_origin(u)

    def at_origin(self, u: float) -> bool:
        return self.rho > 0 and abs(u - self.rho_star) < ORIGIN_GUARD


def circ(p: PopaParams, a: float, b: float) -> float:
    return a + b * (1.0 + p.rho * a)


def inv(p: PopaParams, u: float) -> float:
    """The group inverse −u/η_ρ(u)."""
    if p.at_origin(u):
        raise PopaOriginError(f"{u!r} is the Popa origin of rho={p.rho}; it has no inverse.")
    return -u / (1.0 + p.rho * u)


def eta(p: PopaParams, u: float) -> float:
    return 1.0 + p.rho * u


def eta_star(p: PopaParams, x: float) -> float:
    """The homomorphism of G^ρ onto the multiplicative reals."""
    if p.rho > 0:
        return 1.0 + p.rho * x
    return math.exp(x)


def eta_inverse(p: PopaParams, y: float) -> float:
    if p.rho == 0:
        raise UndefinedForRhoZeroError("eta_inverse needs rho > 0.")
    return (y - 1.0) / p.rho


def reflect(p: PopaParams, u: float) -> float:
    """The reflection u ↦ −u + 2ρ*, an involution swapping the two half-groups."""
    if p.rho == 0:
        raise UndefinedForRhoZeroError("The reflection needs a finite Popa origin (rho > 0).")
    return -u + 2.0 * p.rho_star


@dataclass(frozen=True)
class LocalContext:
    """φ localized at x.

    Attributes:
        phi (Callable[[float], float]): The auxiliary function, usually a RealFunc.
        x (float): The localization point, with φ(x) > 0.
        rho (float): Index of the limiting η used by the mixed identity.
    """
    phi: Callable[[float], float]
    x: float
    rho: float = 0.0
    phi_x: float = field(init=False, repr=False)

    def __post_init__(self):
        phi_x = self.phi(self.x)
        if not phi_x > 0:
            raise DomainError(f"phi({self.x!r}) = {phi_x!r} must be positive.")
        object.__setattr__(self, "phi_x", phi_x)

    def point(self, s: float) -> float:
        """x ∘_φ s = x + sφ(x)."""
        return self.x + s * self.phi_x

    def eta_x(self, s: float) -> float:
        if s == 0:
            return 1.0
        return self.phi(self.point(s)) / self.phi_x


def circ_local(ctx: LocalContext, s: float, t: float) -> float:
    return s + t * ctx.eta_x(s)


def iterate_local(ctx: LocalContext, a: float, n: int) -> float:
    """The n-th localized power of a, starting from a^0 = 0."""
    if n < 0:
        raise BadParamError(f"n must be non-negative, got {n!r}.")
    value = 0.0
    for _ in range(n):
        value = circ_local(ctx, value, a)
    return value


@dataclass(frozen=True)
class IdentityResidual:
    identity: str
    max_abs: float
    max_scaled: float
    worst_sample: dict[str, float]
    samples: int


@dataclass
class ResidualReport:
    """Worst residual per identity over a sample set.

    Residuals are |LHS − RHS|; the scaled residual divides by max(1, |LHS|, |RHS|).
    Boolean checks (closure, sign conditions) record residual 0 or 1.
    """
    entries: dict[str, IdentityResidual] = field(default_factory=dict)

    def record(self, identity: str, lhs: float, rhs: float, **sample: float) -> None:
        self.record_residual(identity, lhs - rhs, max(1.0, abs(lhs), abs(rhs)), **sample)

    def record_residual(self, identity: str, residual: float, scale: float, **sample: float) -> None:
        """Record a signed residual already computed against its own scale."""
        residual = abs(residual)
        scaled = residual / scale
        if math.isnan(residual):
            residual = scaled = math.inf
        current = self.entries.get(identity)
        if current is None:
            self.entries[identity] = IdentityResidual(identity, residual, scaled, dict(sample), 1)
            return
        if scaled > current.max_scaled:
            self.entries[identity] = IdentityResidual(
                identity, max(residual, current.max_abs), scaled, dict(sample), current.samples + 1
            )
        else:
            self.entries[identity] = IdentityResidual(
                identity, max(residual, current.max_abs), current.max_scaled,
                current.worst_sample, current.samples + 1,
            )

    def record_check(self, identity: str, holds: bool, **sample: float) -> None:
        self.record(identity, 0.0 if holds else 1.0, 0.0, **sample)

    def merge(self, other: ResidualReport) -> ResidualReport:
        for entry in other.entries.values():
            current = self.entries.get(entry.identity)
            if current is None or entry.max_scaled > current.max_scaled:
                total = entry.samples + (current.samples if current else 0)
                max_abs = max(entry.max_abs, current.max_abs if current else 0.0)
                self.entries[entry.identity] = IdentityResidual(
                    entry.identity, max_abs, entry.max_scaled, entry.worst_sample, total
                )
            else:
                self.entries[entry.identity] = IdentityResidual(
                    current.identity, max(entry.max_abs, current.max_abs), current.max_scaled,
                    current.worst_sample, current.samples + entry.samples,
                )
        return self

    @property
    def max_scaled(self) -> float:
        return max((entry.max_scaled for entry in self.entries.values()), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_scaled < tol

    def __getitem__(self, identity: str) -> IdentityResidual:
        return self.entries[identity]


def check_prop2(ctx: LocalContext, a: float, b: float, m: int) -> ResidualReport:
    """Check the arithmetic of the localized operations at (x, a, b).

    Identities, with x ∘_φ s := x + sφ(x) and y := x ∘_φ b:
        (i) a^1 = a for the localized powers;
        (ii) x ∘_φ (b ∘_{φx} a) = y ∘_φ a;
        (iii) x ∘_φ (b ∘_η a) = y ∘_φ (a·η(b)/η_x(b)), η = η_ρ with ρ = ctx.rho;
        (iv) x = y ∘_φ b^{-1}, with the localized inverse −b/η_x(b);
        (v) η_x(a^m) = ∏_{k<m} η_{y_k}(a), y_k := x ∘_φ a^k.

    Raises:
        DomainError: An evaluation point leaves φ's domain.
    """
    phi = ctx.phi
    x = ctx.x
    report = ResidualReport()
    sample = {"x": x, "a": a, "b": b}

    report.record("(i)", iterate_local(ctx, a, 1), a, **sample)

    y = ctx.point(b)
    phi_y = phi(y)
    report.record("(ii)", ctx.point(circ_local(ctx, b, a)), y + a * phi_y, **sample)

    p = PopaParams(ctx.rho)
    eta_x_b = ctx.eta_x(b)
    report.record("(iii)", ctx.point(circ(p, b, a)), y + a * eta(p, b) / eta_x_b * phi_y, **sample)

    local_inverse = -b / eta_x_b
    report.record("(iv)", x, y + local_inverse * phi_y, **sample)

    product = 1.0
    power = 0.0
    for _ in range(m):
        y_k = ctx.point(power)
        phi_y_k = phi(y_k)
        product *= phi(y_k + a * phi_y_k) / phi_y_k
        power = circ_local(ctx, power, a)
    report.record("(v)", ctx.eta_x(power), product, m=float(m), **sample)
    return report


def _sample_group(p: PopaParams, rng: np.random.Generator, size: int, positive: bool) -> np.ndarray:
    if p.rho == 0:
        return rng.uniform(-3.0, 3.0, size)
    # draw η-values so every product stays off the origin
    magnitudes = np.exp(rng.uniform(-2.0, 2.0, size))
    signs = np.ones(size) if positive else rng.choice([-1.0, 1.0], size)
    return (signs * magnitudes - 1.0) / p.rho


def group_axiom_report(p: PopaParams, samples: int = 1000, seed: int = 0) -> ResidualReport:
    """Seeded checks of the group structure of G^ρ.

    Covers associativity, commutativity, the neutral element, inverses, the
    η*-homomorphism, closure of G_+ under inversion, the image of u > 0 under
    inversion, and for ρ > 0 the reflection and super-additivity of η⁻¹.
    """
    rng = np.random.default_rng(seed)
    triples = _sample_group(p, rng, 3 * samples, positive=False).reshape(samples, 3)
    positives = _sample_group(p, rng, 2 * samples, positive=True).reshape(samples, 2)
    report = ResidualReport()
    for (a, b, c), (s, t) in zip(triples, positives):
        a, b, c, s, t = float(a), float(b), float(c), float(s), float(t)
        report.record("associativity", circ(p, a, circ(p, b, c)), circ(p, circ(p, a, b), c), a=a, b=b, c=c)
        report.record("commutativity", circ(p, a, b), circ(p, b, a), a=a, b=b)
        report.record("identity", circ(p, a, 0.0), a, a=a)
        report.record("inverse", circ(p, a, inv(p, a)), 0.0, a=a)
        report.record("homomorphism", eta_star(p, circ(p, a, b)), eta_star(p, a) * eta_star(p, b), a=a, b=b)
        report.record_check("closure", p.in_G_plus(inv(p, s)), u=s)
        if p.rho > 0:
            if s > 0:
                report.record_check("inverse_of_positive", p.rho_star < inv(p, s) < 0.0, u=s)
            report.record("reflection", reflect(p, circ(p, reflect(p, s), reflect(p, t))), reflect(p, circ(p, s, t)), s=s, t=t)
    if p.rho > 0:
        grid = np.geomspace(1.0, 100.0, 20)
        for gx in grid:
            for gy in grid:
                slack = eta_inverse(p, gx) + eta_inverse(p, gy) - eta_inverse(p, gx * gy)
                report.record_check("super_additivity", slack <= 1e-12 * max(1.0, gx * gy), x=float(gx), y=float(gy))
    return report
