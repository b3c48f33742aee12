"""
Recursive-descent parser and pretty-printer for the expression language.

Grammar, loosest binding first:

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?          right-associative
    primary := number | 'x' | name | name '(' args ')' | '(' expr ')'

So `-x^2` is −(x²) and `2^-x` is 2^(−x). `x` is the free variable; any other
bare name is a parameter bound at evaluation time.
"""


from __future__ import annotations
from dataclasses import dataclass
from typing import Literal

from ._exceptions import ParseError
from .lexer import Token, tokenize


NodeVariant = Literal["constant", "variable_x", "parameter", "negate", "call", "binary_op"]

FUNCTION_ARITY: dict[str, int] = {
    "sqrt": 1,
    "log": 1,
    "exp": 1,
    "sin": 1,
    "cos": 1,
    "abs": 1,
    "pow": 2,
    "min": 2,
    "max": 2,
    "indicator": 2,
    "eta": 1,
    "H": 1,
    "Krg": 1,
}

PRIMARY_START = ("number", "identifier", "(", "-", "+")


@dataclass(frozen=True)
class ExprNode:
    """An immutable node of a parsed expression.

    Attributes:
        variant (NodeVariant): The node type.
        children (tuple[ExprNode, ...]): Operands or call arguments.
        value (float | None): The number of a constant node.
        name (str | None): Parameter name, function name or operator symbol.
    """
    variant: NodeVariant
    children: tuple[ExprNode, ...] = ()
    value: float | None = None
    name: str | None = None


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def position(self) -> int:
        token = self.peek()
        if token is not None:
            return token.position
        return self.tokens[-1].end if self.tokens else 0

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept_operator(self, *symbols: str) -> Token | None:
        token = self.peek()
        if token is not None and token.kind == "operator" and token.text in symbols:
            return self.advance()
        return None

    def expect(self, kind: str, text: str) -> Token:
        token = self.peek()
        if token is None or token.kind != kind:
            found = "end of input" if token is None else repr(token.text)
            raise ParseError(f"unexpected {found}", self.position(), (text,))
        return self.advance()

    def parse(self) -> ExprNode:
        node = self.expression()
        token = self.peek()
        if token is not None:
            raise ParseError(
                f"unexpected {token.text!r}", token.position, ("operator", "end of input")
            )
        return node

    def expression(self) -> ExprNode:
        node = self.term()
        while (token := self.accept_operator("+", "-")) is not None:
            node = ExprNode("binary_op", (node, self.term()), name=token.text)
        return node

    def term(self) -> ExprNode:
        node = self.unary()
        while (token := self.accept_operator("*", "/")) is not None:
            node = ExprNode("binary_op", (node, self.unary()), name=token.text)
        return node

    def unary(self) -> ExprNode:
        if self.accept_operator("-") is not None:
            return ExprNode("negate", (self.unary(),))
        if self.accept_operator("+") is not None:
            return self.unary()
        return self.power()

    def power(self) -> ExprNode:
        base = self.primary()
        if self.accept_operator("^") is not None:
            return ExprNode("binary_op", (base, self.unary()), name="^")
        return base

    def primary(self) -> ExprNode:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input", self.position(), PRIMARY_START)
        if token.kind == "number":
            self.advance()
            return ExprNode("constant", value=token.value)
        if token.kind == "lparen":
            self.advance()
            node = self.expression()
            self.expect("rparen", ")")
            return node
        if token.kind == "identifier":
            self.advance()
            if token.text in FUNCTION_ARITY:
                return self.call(token)
            if token.text == "x":
                return ExprNode("variable_x")
            return ExprNode("parameter", name=token.text)
        raise ParseError(f"unexpected {token.text!r}", token.position, PRIMARY_START)

    def call(self, name_token: Token) -> ExprNode:
        arity = FUNCTION_ARITY[name_token.text]
        self.expect("lparen", "(")
        args = []
        for index in range(arity):
            args.append(self.expression())
            if index < arity - 1:
                self.expect("comma", ",")
        self.expect("rparen", ")")
        return ExprNode("call", tuple(args), name=name_token.text)


def parse(tokens: list[Token]) -> ExprNode:
    """Parse a token sequence from `tokenize`.

    Raises:
        ParseError: With the offending position and the set of expected tokens.
    """
    if not tokens:
        raise ParseError("empty expression", 0, PRIMARY_START)
    parser = _Parser(tokens)
    try:
        return parser.parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", parser.position()) from None


def parse_expression(src: str) -> ExprNode:
    return parse(tokenize(src))


def to_source(node: ExprNode) -> str:
    """Pretty-print with every compound node parenthesized."""
    match node.variant:
        case "constant":
            return repr(node.value)
        case "variable_x":
            return "x"
        case "parameter":
            return str(node.name)
        case "negate":
            return f"(-{to_source(node.children[0])})"
        case "call":
            return f"{node.name}({', '.join(to_source(child) for child in node.children)})"
        case "binary_op":
            left, right = node.children
            return f"({to_source(left)} {node.name} {to_source(right)})"
    raise AssertionError(node.variant)


def free_parameters(node: ExprNode) -> set[str]:
    """Names the expression needs bound, including those implied by kernel calls."""
    names: set[str] = set()
    if node.variant == "parameter":
        names.add(str(node.name))
    elif node.variant == "call":
        names.update(KERNEL_PARAMETERS.get(str(node.name), ()))
    for child in node.children:
        names |= free_parameters(child)
    return names


KERNEL_PARAMETERS: dict[str, tuple[str, ...]] = {
    "eta": ("rho",),
    "H": ("gamma",),
    "Krg": ("rho", "gamma"),
}
