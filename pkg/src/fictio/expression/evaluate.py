"""Evaluation over real, complex and infinitesimal domains; Leibnizian differentiation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import DomainError, UnboundVariable
from ..imaginary import ComplexQuantity
from ..infinitesimal import LCNumber, epsilon, lc_from_real, lc_sqrt, standard_part
from ..scalars import is_exact, rational_sqrt
from .nodes import (
    Add, Constant, Div, Expr, Integral, IntPow, Mul, Neg, Sqrt, Sub, Variable, free_variables,
)
from .quadrature import integrate

REAL, COMPLEX, LC = "real", "complex", "lc"
DOMAINS = (REAL, COMPLEX, LC)

try:
    import mpmath
except ImportError:  # pragma: no cover
    mpmath = None


def _real_sqrt(x):
    if mpmath is not None and isinstance(x, mpmath.mpf):
        if x < 0:
            raise DomainError("sqrt of a negative real")
        return mpmath.sqrt(x)
    if x < 0:
        raise DomainError("sqrt of a negative real")
    if isinstance(x, Fraction):
        root = rational_sqrt(x)
        if root is not None:
            return root
    return math.sqrt(x)


def _align(left, right):
    """mpf and Fraction do not mix under every operator; lift the Fraction."""
    if mpmath is not None:
        if isinstance(left, Fraction) and isinstance(right, mpmath.mpf):
            return mpmath.mpf(left.numerator) / left.denominator, right
        if isinstance(right, Fraction) and isinstance(left, mpmath.mpf):
            return left, mpmath.mpf(right.numerator) / right.denominator
    return left, right


def _embed(value, domain: str):
    if domain == LC:
        return lc_from_real(value) if not isinstance(value, LCNumber) else value
    if domain == COMPLEX:
        return ComplexQuantity.of(value)
    if isinstance(value, (LCNumber, ComplexQuantity)):
        raise DomainError(f"{type(value).__name__} value in the real domain")
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return value


def _as_float(value) -> float:
    """A real-valued environment entry for quadrature; must carry no infinitesimal part."""
    if isinstance(value, LCNumber):
        st = standard_part(value)
        if not (value - st).is_zero():
            raise DomainError("integrand parameters must be standard (no infinitesimal part)")
        value = st
    if isinstance(value, ComplexQuantity):
        raise DomainError("integral over the complex domain is unsupported")
    return float(value)


def evaluate(expr: Expr, env: Mapping[str, object], domain: str = REAL):
    """Evaluate ``expr`` with every variable looked up in ``env``.

    Real integrals use adaptive Simpson quadrature.  At an infinitesimally
    shifted upper limit ``x0 + δ`` an integral is the quadrature up to ``x0``
    plus ``Σ g⁽ᵏ⁾(x0) δᵏ⁺¹/(k+1)!``, with the integrand's Taylor coefficients
    read off its value at ``x0 + ε``.
    """
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    return _Evaluator(env, domain).run(expr)


class _Evaluator:
    def __init__(self, env, domain):
        self.env = env
        self.domain = domain

    def run(self, e: Expr):
        if isinstance(e, Constant):
            return _embed(e.value, self.domain) if self.domain != REAL else e.value
        if isinstance(e, Variable):
            try:
                value = self.env[e.name]
            except KeyError:
                raise UnboundVariable(f"variable {e.name!r} is not bound") from None
            return _embed(value, self.domain)
        if isinstance(e, (Add, Sub, Mul, Div)):
            left, right = _align(self.run(e.left), self.run(e.right))
        if isinstance(e, Add):
            return left + right
        if isinstance(e, Sub):
            return left - right
        if isinstance(e, Mul):
            return left * right
        if isinstance(e, Div):
            if not isinstance(right, LCNumber) and right == 0:
                raise ZeroDivisionError("division by zero")
            return left / right
        if isinstance(e, Neg):
            return -self.run(e.operand)
        if isinstance(e, IntPow):
            base = self.run(e.base)
            if e.exponent < 0 and not isinstance(base, LCNumber) and base == 0:
                raise ZeroDivisionError("zero raised to a negative power")
            return base ** e.exponent
        if isinstance(e, Sqrt):
            arg = self.run(e.arg)
            if self.domain == LC:
                return lc_sqrt(arg)
            if self.domain == COMPLEX:
                return arg.sqrt()
            return _real_sqrt(arg)
        if isinstance(e, Integral):
            return self.integral(e)
        raise TypeError(f"not an expression node: {e!r}")

    def _integrand(self, e: Integral):
        needed = free_variables(e.integrand) - {e.var}
        params = {k: v for k, v in self.env.items() if k in needed}

        def g(t: float) -> float:
            scope = {k: _as_float(v) for k, v in params.items()}
            scope[e.var] = t
            return float(evaluate(e.integrand, scope, REAL))

        return g

    def _mp_integral(self, e: Integral, upper):
        """Tanh-sinh quadrature at the working precision, for high-precision callers."""
        needed = free_variables(e.integrand) - {e.var}
        scope = {k: v for k, v in self.env.items() if k in needed}

        def g(t):
            return evaluate(e.integrand, {**scope, e.var: t}, REAL)

        lower = mpmath.mpf(e.lower.numerator) / e.lower.denominator
        return mpmath.quad(g, [lower, upper])

    def integral(self, e: Integral):
        if self.domain == COMPLEX:
            raise DomainError("integral over the complex domain is unsupported")
        upper = self.run(e.upper)
        if mpmath is not None and isinstance(upper, mpmath.mpf):
            return self._mp_integral(e, upper)
        g = self._integrand(e)
        if not isinstance(upper, LCNumber):
            return integrate(g, float(e.lower), float(upper))
        x0 = standard_part(upper)
        delta = upper - x0
        base = lc_from_real(integrate(g, float(e.lower), float(x0)), order=upper.order)
        if delta.is_zero():
            return base
        scope = {k: v for k, v in self.env.items() if k != e.var}
        scope[e.var] = lc_from_real(x0, order=upper.order) + epsilon(upper.order)
        series = evaluate(e.integrand, scope, LC)
        if not series.is_zero() and series.valuation < 0:
            raise DomainError("integrand is infinite at the upper limit")
        top = upper.order - 1
        if series.precision_order is not None:
            top = min(top, series.precision_order)
        result = base
        power = delta
        for k in range(top + 1):
            # coefficient of ε^k is g^(k)(x0)/k!
            result = result + power * (series.coefficient(k) / (k + 1))
            power = power * delta
        return result


def differentiate(expr: Expr, var: str, x0, env: Mapping[str, object] | None = None):
    """``st((f(x0 + ε) − f(x0)) / ε)``; other variables hold their real values."""
    env = dict(env or {})
    if isinstance(x0, int) and not isinstance(x0, bool):
        x0 = Fraction(x0)
    eps = epsilon()
    base = lc_from_real(x0)
    shifted = evaluate(expr, {**env, var: base + eps}, LC)
    fixed = evaluate(expr, {**env, var: base}, LC)
    return standard_part((shifted - fixed) / eps)


@dataclass(frozen=True)
class TangentData:
    x0: object
    ordinate: object
    slope: object
    subtangent: object | None
    subtangent_error: str | None
    line_slope: object
    line_intercept: object


def tangent_data(expr: Expr, x0, env: Mapping[str, object] | None = None, var: str = "x") -> TangentData:
    """Ordinate, slope, subtangent ``y0/slope`` and the tangent line ``y = y0 + slope (x − x0)``.

    The subtangent comes from the similarity of the characteristic triangle
    (legs dx, dy) with the tangent–ordinate–subtangent triangle.
    """
    env = dict(env or {})
    if isinstance(x0, int) and not isinstance(x0, bool):
        x0 = Fraction(x0)
    y0 = evaluate(expr, {**env, var: x0}, REAL)
    slope = differentiate(expr, var, x0, env)
    if slope == 0:
        subtangent, error = None, "slope is zero: the tangent never meets the axis"
    else:
        subtangent, error = y0 / slope, None
    return TangentData(x0, y0, slope, subtangent, error, slope, y0 - slope * x0)


def is_exact_value(value) -> bool:
    if isinstance(value, LCNumber):
        return value.exact
    if isinstance(value, ComplexQuantity):
        return value.exact
    return is_exact(value)
