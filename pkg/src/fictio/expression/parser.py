"""Recursive-descent parser for the curve/identity grammar.

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ("^" exponent)*
    exponent := ["-" | "+"] INTEGER | "(" ["-" | "+"] INTEGER ")"
    atom     := NUMBER | NAME | "sqrt" "(" expr ")"
              | "integral" "(" expr "," NAME "," literal "," NAME ")"
              | "(" expr ")"

Integer divisions of literals fold into one rational constant, so ``1/3``
and ``(1/3)`` both parse to ``Constant(1/3)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ExprSyntaxError
from .nodes import Add, Constant, Div, Expr, Integral, IntPow, Mul, Neg, Sqrt, Sub, Variable

_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)
_FUNCTIONS = {"sqrt", "integral"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek[0] == "op" and self.peek[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            kind, tok, pos = self.peek
            raise ExprSyntaxError(f"expected {value!r}, found {tok or 'end of input'!r}", pos)

    def fail(self, message: str):
        raise ExprSyntaxError(message, self.peek[2])

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek[0] != "end":
            self.fail(f"unexpected {self.peek[1]!r}")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while True:
            if self.accept("+"):
                left = Add(left, self.term())
            elif self.accept("-"):
                left = Sub(left, self.term())
            else:
                return left

    def term(self) -> Expr:
        left = self.unary()
        while True:
            if self.accept("*"):
                left = Mul(left, self.unary())
            elif self.accept("/"):
                right = self.unary()
                if isinstance(left, Constant) and isinstance(right, Constant) and right.value != 0:
                    left = Constant(left.value / right.value)
                else:
                    left = Div(left, right)
            else:
                return left

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        while self.accept("^"):
            base = IntPow(base, self.exponent())
        return base

    def exponent(self) -> int:
        paren = self.accept("(")
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        kind, tok, pos = self.peek
        if kind != "number" or not tok.isdigit():
            raise ExprSyntaxError("exponent must be an integer literal", pos)
        self.advance()
        if paren:
            self.expect(")")
        return sign * int(tok)

    def atom(self) -> Expr:
        kind, tok, pos = self.peek
        if kind == "number":
            self.advance()
            return Constant(Fraction(tok))
        if kind == "name":
            self.advance()
            if tok in _FUNCTIONS:
                self.expect("(")
                return self.sqrt() if tok == "sqrt" else self.integral()
            if self.peek[0] == "op" and self.peek[1] == "(":
                raise ExprSyntaxError(f"unknown function {tok!r}", pos)
            return Variable(tok)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail(f"unexpected {tok or 'end of input'!r}")

    def sqrt(self) -> Expr:
        arg = self.expr()
        self.expect(")")
        return Sqrt(arg)

    def name(self) -> str:
        kind, tok, pos = self.peek
        if kind != "name" or tok in _FUNCTIONS:
            raise ExprSyntaxError("expected a variable name", pos)
        self.advance()
        return tok

    def integral(self) -> Expr:
        integrand = self.expr()
        self.expect(",")
        var = self.name()
        self.expect(",")
        pos = self.peek[2]
        lower = _rational_literal(self.expr(), pos)
        self.expect(",")
        upper_pos = self.peek[2]
        upper = self.name()
        self.expect(")")
        if upper == var:
            raise ExprSyntaxError(f"bound variable {var!r} shadows the upper limit", upper_pos)
        return Integral(integrand, var, lower, Variable(upper))


def _rational_literal(e: Expr, pos: int) -> Fraction:
    if isinstance(e, Neg):
        return -_rational_literal(e.operand, pos)
    if isinstance(e, Div):
        den = _rational_literal(e.right, pos)
        if den == 0:
            raise ExprSyntaxError("lower limit divides by zero", pos)
        return _rational_literal(e.left, pos) / den
    if not isinstance(e, Constant):
        raise ExprSyntaxError("lower limit must be a rational literal", pos)
    return e.value


def parse(text: str) -> Expr:
    """Parse ``text``; raises :class:`ExprSyntaxError` with a character position."""
    return _Parser(text).parse()
