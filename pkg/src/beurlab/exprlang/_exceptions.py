from __future__ import annotations

from .._exceptions import BeurlabError


class ExprError(BeurlabError):
    """Base class for exceptions related to beurlab.exprlang."""


class LexError(ExprError):
    """Raised when the source contains an illegal character or a malformed number."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ParseError(ExprError):
    """Raised when the token stream does not match the grammar."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")
        self.position = position
        self.expected = expected


class UnboundParamError(ExprError, KeyError):
    """Raised when an expression refers to a parameter that has no value."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
