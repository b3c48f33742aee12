from __future__ import annotations
import math
from collections.abc import Mapping

from .._exceptions import BeurlabError, DomainError
from ..algebra.kernels import KernelSpec
from ..realfunc import RealFunc
from ._exceptions import UnboundParamError
from .parser import ExprNode, free_parameters, parse_expression, to_source


BUILTIN_CONSTANTS: dict[str, float] = {"pi": math.pi, "e": math.e}


def _param(name: str, params: Mapping[str, float]) -> float:
    if name in params:
        return float(params[name])
    if name in BUILTIN_CONSTANTS:
        return BUILTIN_CONSTANTS[name]
    raise UnboundParamError(f"Parameter {name!r} is not bound.")


def _call(name: str, args: list[float], x: float, params: Mapping[str, float]) -> float:
    match name:
        case "sqrt":
            if args[0] < 0:
                raise DomainError(f"sqrt of negative value {args[0]!r}.")
            return math.sqrt(args[0])
        case "log":
            if args[0] <= 0:
                raise DomainError(f"log of non-positive value {args[0]!r}.")
            return math.log(args[0])
        case "exp":
            return math.exp(args[0])
        case "sin":
            return math.sin(args[0])
        case "cos":
            return math.cos(args[0])
        case "abs":
            return abs(args[0])
        case "pow":
            return _power(args[0], args[1])
        case "min":
            return min(args)
        case "max":
            return max(args)
        case "indicator":
            return 1.0 if args[0] <= x <= args[1] else 0.0
        case "eta":
            return KernelSpec("eta", rho=_param("rho", params))(args[0])
        case "H":
            return KernelSpec("H_gamma", gamma=_param("gamma", params))(args[0])
        case "Krg":
            return KernelSpec("K_rho_gamma", rho=_param("rho", params), gamma=_param("gamma", params))(args[0])
    raise AssertionError(name)


def _power(base: float, exponent: float) -> float:
    if base == 0 and exponent < 0:
        raise DomainError("zero raised to a negative power.")
    return math.pow(base, exponent)


def _eval(node: ExprNode, x: float, params: Mapping[str, float]) -> float:
    match node.variant:
        case "constant":
            return float(node.value)  # type: ignore[arg-type]
        case "variable_x":
            return x
        case "parameter":
            return _param(str(node.name), params)
        case "negate":
            return -_eval(node.children[0], x, params)
        case "call":
            args = [_eval(child, x, params) for child in node.children]
            return _call(str(node.name), args, x, params)
        case "binary_op":
            left = _eval(node.children[0], x, params)
            right = _eval(node.children[1], x, params)
            match node.name:
                case "+":
                    return left + right
                case "-":
                    return left - right
                case "*":
                    return left * right
                case "/":
                    if right == 0:
                        raise DomainError("division by zero.")
                    return left / right
                case "^":
                    return _power(left, right)
    raise AssertionError(node.variant)


def eval_expr(node: ExprNode, x: float, params: Mapping[str, float] | None = None) -> float:
    """Evaluate a parsed expression at x.

    Raises:
        DomainError: log of a non-positive value, sqrt of a negative value,
            division by zero, a kernel left of its Popa origin, overflow or any
            non-finite result.
        UnboundParamError: A parameter has no value in `params`.
    """
    try:
        value = _eval(node, float(x), params or {})
    except (ValueError, OverflowError) as exc:
        if isinstance(exc, BeurlabError):
            raise
        raise DomainError(f"{to_source(node)} at x={x!r}: {exc}") from exc
    if not math.isfinite(value):
        raise DomainError(f"{to_source(node)} is not finite at x={x!r}.")
    return value


def compile_expression(
    src: str,
    params: Mapping[str, float] | None = None,
    *,
    lower: float = -math.inf,
    closed_lower: bool = False,
    name: str | None = None,
) -> RealFunc:
    """Parse `src` and bind `params`, returning an evaluable RealFunc of x.

    Raises:
        LexError, ParseError: Malformed source.
        UnboundParamError: A referenced parameter is missing from `params`.
    """
    node = parse_expression(src)
    bound = dict(params or {})
    missing = sorted(n for n in free_parameters(node) if n not in bound and n not in BUILTIN_CONSTANTS)
    if missing:
        raise UnboundParamError(f"Unbound parameter(s) {', '.join(missing)} in {src!r}.")
    return RealFunc(
        lambda x: eval_expr(node, x, bound),
        lower=lower,
        closed_lower=closed_lower,
        name=name or src,
    )
