"""Recursive-descent parser for the polynomial text grammar.

Grammar (whitespace insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

Juxtaposition is not a product: ``2x`` and ``x y`` are syntax errors.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, RingSpec

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.column = pos + 1
        super().__init__(f"{message} at column {self.column}: {text!r}")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        start = m.start()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolynomialSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def fail(self, message):
        raise PolynomialSyntaxError(message, self.text, self.peek()[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        result = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            self.fail(f"unexpected {tok[1]!r} (products need an explicit '*')")
        return result

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if kind == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            base = base ** int(tok[1])
            if self.peek()[0] == "^":
                self.fail("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            c = Fraction(int(value))
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if int(den[1]) == 0:
                    raise PolynomialSyntaxError("division by zero", self.text, den[2])
                c = c / int(den[1])
            return Polynomial.constant(self.ring, c)
        if kind == "name":
            self.take()
            if value not in self.index:
                raise PolynomialSyntaxError(f"unknown variable {value!r}", self.text, pos)
            return Polynomial.variable(self.ring, self.index[value])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {value!r}")


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    return _Parser(text, ring).parse()
