"""Evaluable real functions of one real variable with an explicit domain.

Every function that flows through beurlab (φ, F, h, U, kernels, parsed
expressions) is wrapped as a `RealFunc`, so domain breaches surface as
`DomainError` instead of NaN values leaking into limits and quadratures.
"""


from __future__ import annotations
import math
from collections.abc import Callable
from dataclasses import dataclass, field

from ._exceptions import DomainError


@dataclass(frozen=True)
class RealFunc:
    """A real-valued function with an interval domain.

    Attributes:
        func (Callable[[float], float]): The raw evaluator.
        lower (float): Left end of the domain, `-inf` for none.
        upper (float): Right end of the domain, `inf` for none.
        closed_lower (bool): Whether `lower` itself belongs to the domain.
        name (str): A label used in reports and error messages.
    """
    func: Callable[[float], float] = field(repr=False)
    lower: float = -math.inf
    upper: float = math.inf
    closed_lower: bool = False
    name: str = "f"

    def contains(self, x: float) -> bool:
        if math.isnan(x) or x >= self.upper:
            return False
        if self.closed_lower:
            return x >= self.lower
        return x > self.lower

    def __call__(self, x: float) -> float:
        x = float(x)
        if not self.contains(x):
            raise DomainError(f"{self.name}: {x!r} is outside the domain {self.domain_text}.")
        try:
            value = float(self.func(x))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"{self.name}: evaluation at {x!r} failed: {exc}") from exc
        if not math.isfinite(value):
            raise DomainError(f"{self.name}: non-finite value at {x!r}.")
        return value

    @property
    def domain_text(self) -> str:
        left = "[" if self.closed_lower else "("
        return f"{left}{self.lower}, {self.upper})"

    def restricted(self, lower: float, closed_lower: bool = False) -> RealFunc:
        """Return the same function on a domain cut from the left."""
        if lower < self.lower:
            lower, closed_lower = self.lower, self.closed_lower
        return RealFunc(self.func, lower, self.upper, closed_lower, self.name)

    @classmethod
    def constant(cls, value: float, name: str | None = None) -> RealFunc:
        return cls(lambda _x: value, name=name or f"const({value:g})")

    @classmethod
    def identity(cls, name: str = "x") -> RealFunc:
        return cls(lambda x: x, name=name)

    @classmethod
    def combine(cls, alpha: float, f: RealFunc, beta: float, g: RealFunc) -> RealFunc:
        """Return `alpha*f + beta*g` on the intersection of both domains."""
        if f.lower > g.lower:
            lower, closed = f.lower, f.closed_lower
        elif g.lower > f.lower:
            lower, closed = g.lower, g.closed_lower
        else:
            lower, closed = f.lower, f.closed_lower and g.closed_lower
        return cls(
            lambda x: alpha * f(x) + beta * g(x),
            lower,
            min(f.upper, g.upper),
            closed,
            name=f"{alpha:g}*{f.name}+{beta:g}*{g.name}",
        )
