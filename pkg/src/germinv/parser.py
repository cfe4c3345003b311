"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace between tokens is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom (("^" | "**") INT)?
    atom    := NUMBER | NAME | "(" expr ")"
    NUMBER  := INT ("/" INT)?
    INT     := [0-9]+
    NAME    := [A-Za-z_][A-Za-z0-9_]*

``-x^2`` parses as ``-(x^2)``; exponents must be non-negative integer
literals.  Names must be variables of the target ring.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, RingContext

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()/]))"
)


class PolynomialSyntaxError(ValueError):
    """Malformed expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, src: str, pos: int):
        self.src = src
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {src!r}")


class UnknownVariableError(PolynomialSyntaxError):
    pass


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    end = len(src.rstrip())
    while pos < end:
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {src[start]!r}", src, start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: RingContext):
        self.src = src
        self.ring = ring
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise PolynomialSyntaxError(f"{message}, found {what}", self.src, tok[2])

    def expect_op(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp = self.take()
            if exp[0] != "num":
                self.error("expected a non-negative integer exponent", exp)
            return base ** int(exp[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, text, pos = tok
        if kind == "num":
            value = Fraction(int(text))
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("expected an integer denominator", den)
                if int(den[1]) == 0:
                    raise PolynomialSyntaxError("zero denominator", self.src, den[2])
                value /= int(den[1])
            return self.ring.const(value)
        if kind == "name":
            if text not in self.ring.variables:
                raise UnknownVariableError(
                    f"unknown variable {text!r} (ring has {', '.join(self.ring.variables)})",
                    self.src,
                    pos,
                )
            return self.ring.var(text)
        if kind == "op" and text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        self.error("expected a number, variable or '('", tok)


def parse_polynomial(src: str, ring: RingContext) -> Polynomial:
    """Parse ``src`` into a canonical :class:`Polynomial` over ``ring``."""
    return _Parser(src, ring).parse()
