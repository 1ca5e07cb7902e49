"""
Expression parser for the polynomial text format.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" unary) | ("/" INT))*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | IDENT | "(" expr ")"

Implicit multiplication is rejected. `n/d` rational literals come out of
the "/" INT rule.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from src.algebra.context import Context
from src.algebra.polynomial import Polynomial
from src.errors import ParseError


TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()])|(?P<bad>\S))")


@dataclass
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int = 1) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            break
        kind = match.lastgroup
        column = match.start(kind) + 1
        if kind == "bad":
            raise ParseError(f"unexpected character '{match.group(kind)}'", line, column, match.group(kind))
        tokens.append(Token(kind, match.group(kind), column))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, context: Context, text: str, line: int):
        self.context = context
        self.line = line
        self.tokens = tokenize(text, line)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str) -> ParseError:
        tok = self.current
        return ParseError(message, self.line, tok.column, tok.text or None)

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def expect_int(self) -> int:
        tok = self.current
        if tok.kind != "int":
            raise self.error(f"expected integer, found '{tok.text or 'end of input'}'")
        self.pos += 1
        return int(tok.text)

    def parse(self) -> Polynomial:
        if self.current.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.current.kind != "end":
            raise self.error(f"unexpected token '{self.current.text}'")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Polynomial:
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.accept("/"):
                divisor = self.expect_int()
                if divisor == 0:
                    raise ParseError("division by zero", self.line, self.tokens[self.pos - 1].column, "0")
                value = value * Fraction(1, divisor)
            else:
                return value

    def unary(self) -> Polynomial:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            return base ** self.expect_int()
        return base

    def atom(self) -> Polynomial:
        tok = self.current
        if tok.kind == "int":
            self.pos += 1
            return Polynomial.constant(self.context, int(tok.text))
        if tok.kind == "ident":
            if tok.text not in self.context.names:
                raise self.error(f"unknown identifier '{tok.text}'")
            self.pos += 1
            return Polynomial.gen(self.context, tok.text)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        raise self.error(f"unexpected token '{tok.text or 'end of input'}'")


def parse_polynomial(context: Context, text: str, line: int = 1) -> Polynomial:
    """Parse one expression; positions in errors are 1-based."""
    return _Parser(context, text, line).parse()
