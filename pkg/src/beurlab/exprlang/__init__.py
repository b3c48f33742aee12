from .evaluator import BUILTIN_CONSTANTS, compile_expression, eval_expr
from .lexer import Token, tokenize
from .parser import (
    FUNCTION_ARITY,
    ExprNode,
    free_parameters,
    parse,
    parse_expression,
    to_source,
)
from ._exceptions import ExprError, LexError, ParseError, UnboundParamError


__all__ = [
    "BUILTIN_CONSTANTS",
    "ExprError",
    "ExprNode",
    "FUNCTION_ARITY",
    "LexError",
    "ParseError",
    "Token",
    "UnboundParamError",
    "compile_expression",
    "eval_expr",
    "free_parameters",
    "parse",
    "parse_expression",
    "to_source",
    "tokenize",
]
