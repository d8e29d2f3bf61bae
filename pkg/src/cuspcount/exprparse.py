"""Recursive-descent parser turning written expressions into Poly values.

Accepted syntax (also shown in the CLI help):

    expr   :=  term (("+" | "-") term)*
    term   :=  unary ("*" unary)*
    unary  :=  "-" unary | atom ["^" exponent]
    atom   :=  integer ["/" integer]  |  variable  |  "(" expr ")"

Multiplication must be written explicitly ("t*x1", never "t x1" or "tx1"),
"/" is only allowed inside a rational literal such as 3/4, and exponents are
non-negative integers up to EXPONENT_CAP.  Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .polyring import Poly

EXPONENT_CAP = 64

_DEFAULT_VARS = ("t", "x1", "x2")


@dataclass(frozen=True)
class ExprSource:
    """An input expression together with the variables it may mention."""

    text: str
    declared_vars: tuple[str, ...] = _DEFAULT_VARS

    def __post_init__(self):
        if len(set(self.declared_vars)) != len(self.declared_vars):
            raise ValueError("declared variables must be distinct")


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Returns (kind, value, position) triples; kind is NUM, NAME or OP."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
        elif ch in _TOKEN_CHARS:
            tokens.append(("OP", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, src: ExprSource):
        self.vars = tuple(src.declared_vars)
        self.tokens = _tokenize(src.text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, at = self.peek()
        if kind != "OP" or value != op:
            raise ParseError(f"expected {op!r}", at)
        self.advance()

    def parse(self) -> Poly:
        poly = self.expr()
        kind, value, at = self.peek()
        if kind != "END":
            if kind in ("NAME", "NUM") or value == "(":
                raise ParseError(
                    "adjacent factors need an explicit '*'", at
                )
            raise ParseError(f"unexpected {value!r}", at)
        return poly

    def expr(self) -> Poly:
        acc = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "OP" and value in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            kind, value, at = self.peek()
            if kind == "OP" and value == "*":
                self.advance()
                acc = acc * self.unary()
            elif kind in ("NAME", "NUM") or (kind == "OP" and value == "("):
                raise ParseError("adjacent factors need an explicit '*'", at)
            else:
                return acc

    def unary(self) -> Poly:
        kind, value, _ = self.peek()
        if kind == "OP" and value == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, value, at = self.peek()
        if kind == "OP" and value == "^":
            self.advance()
            kind, value, at = self.peek()
            if kind == "OP" and value == "-":
                raise ParseError("exponent must be a non-negative integer", at)
            if kind != "NUM":
                raise ParseError("exponent must be a non-negative integer", at)
            self.advance()
            e = int(value)
            if e > EXPONENT_CAP:
                raise ParseError(f"exponent {e} exceeds the cap of {EXPONENT_CAP}", at)
            return base**e
        return base

    def atom(self) -> Poly:
        kind, value, at = self.advance()
        if kind == "NUM":
            num = int(value)
            kind2, value2, _ = self.peek()
            if kind2 == "OP" and value2 == "/":
                self.advance()
                kind3, value3, at3 = self.peek()
                if kind3 != "NUM":
                    raise ParseError("denominator must be an integer literal", at3)
                self.advance()
                den = int(value3)
                if den == 0:
                    raise ParseError("denominator must be nonzero", at3)
                return Poly.constant(Fraction(num, den), self.vars)
            return Poly.constant(num, self.vars)
        if kind == "NAME":
            if value not in self.vars:
                raise ParseError(f"unknown identifier {value!r}", at)
            return Poly.variable(value, self.vars)
        if kind == "OP" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "OP" and value == "/":
            raise ParseError("'/' is only allowed inside a rational literal", at)
        raise ParseError(f"unexpected {value or 'end of input'!r}", at)


def parse_poly(src: ExprSource | str, declared_vars: Sequence[str] | None = None) -> Poly:
    """Parse an expression into its canonical expanded Poly."""
    if isinstance(src, str):
        src = ExprSource(src, tuple(declared_vars) if declared_vars else _DEFAULT_VARS)
    if not src.text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(src).parse()
