from __future__ import annotations
import math
import re
from dataclasses import dataclass
from typing import Literal

from ._exceptions import LexError


TokenKind = Literal["number", "identifier", "operator", "lparen", "rparen", "comma"]

NUMBER_PATTERN = re.compile(r"(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
DIGITS = frozenset("0123456789")
IDENTIFIER_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
OPERATORS = frozenset("+-*/^")
PUNCTUATION: dict[str, TokenKind] = {"(": "lparen", ")": "rparen", ",": "comma"}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int
    value: float | None = None

    @property
    def end(self) -> int:
        return self.position + len(self.text)


def tokenize(src: str) -> list[Token]:
    """Split an expression into tokens, skipping whitespace.

    Numbers take the longest match of the integer, decimal and exponent forms;
    a number running straight into '.', a letter or '_' is malformed.

    Raises:
        LexError: Empty input, an illegal character or a malformed number.
    """
    if not src or src.isspace():
        raise LexError("empty expression", 0)
    tokens: list[Token] = []
    pos = 0
    while pos < len(src):
        char = src[pos]
        if char.isspace():
            pos += 1
        elif char in DIGITS or char == ".":
            match = NUMBER_PATTERN.match(src, pos)
            if match is None:
                raise LexError("malformed number", pos)
            end = match.end()
            if end < len(src) and (src[end] == "." or src[end] in IDENTIFIER_START):
                raise LexError("malformed number", end)
            value = float(match.group())
            if not math.isfinite(value):
                raise LexError("number out of range", pos)
            tokens.append(Token("number", match.group(), pos, value))
            pos = end
        elif char in IDENTIFIER_START:
            match = IDENTIFIER_PATTERN.match(src, pos)
            assert match is not None
            tokens.append(Token("identifier", match.group(), pos))
            pos = match.end()
        elif char in OPERATORS:
            tokens.append(Token("operator", char, pos))
            pos += 1
        elif char in PUNCTUATION:
            tokens.append(Token(PUNCTUATION[char], char, pos))
            pos += 1
        else:
            raise LexError(f"illegal character {char!r}", pos)
    return tokens
