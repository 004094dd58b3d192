"""Recursive-descent parser for the polynomial text grammar.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NUMBER '/' NUMBER | IDENT | '(' expr ')'
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import DEFAULT, MultiPoly, Registry

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*\*|[-+*()]))")


def _tokenize(text: str):
    text = text.replace("−", "-")
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} at offset {pos}")
        num, ident, op = m.groups()
        if num is not None:
            if "/" in num and int(num.split("/")[1]) == 0:
                raise ParseError(f"zero denominator in {num}")
            out.append(("num", Fraction(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, registry):
        self.toks = tokens
        self.i = 0
        self.reg = registry

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a non-negative integer literal")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.const(val, self.reg)
        if kind == "id":
            if val not in self.reg:
                raise ParseError(f"unknown variable {val!r}")
            return MultiPoly.var(val, self.reg)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if kind else "unexpected end of input")


def parse_poly(text: str, registry: Registry = DEFAULT) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``registry``."""
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    p = _Parser(tokens, registry)
    result = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input at token {p.peek()[1]!r}")
    return result
