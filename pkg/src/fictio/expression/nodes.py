"""Expression tree nodes and the canonical renderer."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class Expr:
    """Base class; concrete nodes are frozen dataclasses."""

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n: int):
        return IntPow(self, n)

    def __str__(self):
        return render(self)


def _wrap(value) -> "Expr":
    if isinstance(value, Expr):
        return value
    return Constant(Fraction(value))


@dataclass(frozen=True, eq=True)
class Constant(Expr):
    value: Fraction


@dataclass(frozen=True, eq=True)
class Variable(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True)
class IntPow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, eq=True)
class Sqrt(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Integral(Expr):
    """``∫ integrand d(var)`` from the rational ``lower`` to the variable ``upper``."""

    integrand: Expr
    var: str
    lower: Fraction
    upper: Variable

    def __post_init__(self):
        if self.var == self.upper.name:
            raise ValueError(f"bound variable {self.var!r} shadows the upper limit")


Node = Union[Constant, Variable, Add, Sub, Mul, Div, Neg, IntPow, Sqrt, Integral]

_BINARY = {Add: ("+", 1), Sub: ("-", 1), Mul: ("*", 2), Div: ("/", 2)}


def _precedence(e: Expr) -> int:
    if type(e) in _BINARY:
        return _BINARY[type(e)][1]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, IntPow):
        return 4
    if isinstance(e, Constant) and e.value < 0:
        return 3
    return 5


def _literal(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render(e: Expr) -> str:
    """Render with the minimum parentheses the parser needs to rebuild the same tree."""
    if isinstance(e, Constant):
        text = _literal(e.value)
        return f"({text})" if e.value.denominator != 1 else text
    if isinstance(e, Variable):
        return e.name
    if type(e) in _BINARY:
        op, prec = _BINARY[type(e)]
        left = render(e.left)
        if _precedence(e.left) < prec:
            left = f"({left})"
        right = render(e.right)
        if _precedence(e.right) <= prec:
            right = f"({right})"
        return f"{left} {op} {right}"
    if isinstance(e, Neg):
        inner = render(e.operand)
        if _precedence(e.operand) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, IntPow):
        base = render(e.base)
        if _precedence(e.base) < 5:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Sqrt):
        return f"sqrt({render(e.arg)})"
    if isinstance(e, Integral):
        return f"integral({render(e.integrand)}, {e.var}, {_literal(e.lower)}, {e.upper.name})"
    raise TypeError(f"not an expression node: {e!r}")


def free_variables(e: Expr) -> set[str]:
    if isinstance(e, Variable):
        return {e.name}
    if isinstance(e, Constant):
        return set()
    if isinstance(e, Integral):
        return (free_variables(e.integrand) - {e.var}) | {e.upper.name}
    if isinstance(e, (Neg,)):
        return free_variables(e.operand)
    if isinstance(e, IntPow):
        return free_variables(e.base)
    if isinstance(e, Sqrt):
        return free_variables(e.arg)
    return free_variables(e.left) | free_variables(e.right)
