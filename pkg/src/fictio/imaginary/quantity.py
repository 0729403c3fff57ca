"""Imaginary quantities ``a + b√−1`` over exact rationals (or surds) and floats."""
from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

from ..scalars import Surd, format_scalar, is_exact, sqrt_exact


def _real(x) -> bool:
    return (isinstance(x, numbers.Real) and not isinstance(x, bool)) or isinstance(x, Surd)


def _norm_scalar(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class ComplexQuantity:
    re: object
    im: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _norm_scalar(self.re))
        object.__setattr__(self, "im", _norm_scalar(self.im))

    @classmethod
    def of(cls, value) -> "ComplexQuantity":
        if isinstance(value, ComplexQuantity):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        return cls(value, Fraction(0) if is_exact(value) else 0.0)

    @property
    def exact(self) -> bool:
        return is_exact(self.re) and is_exact(self.im)

    def _lift(self, other):
        if isinstance(other, ComplexQuantity):
            return other
        if _real(other) or isinstance(other, complex):
            return ComplexQuantity.of(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexQuantity(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexQuantity(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexQuantity(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexQuantity(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "ComplexQuantity":
        return ComplexQuantity(self.re, -self.im)

    def abs2(self):
        """``|z|**2 = re**2 + im**2``, exact when the components are."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero quantity")
        if other.im == 0:
            return ComplexQuantity(self.re / other.re, self.im / other.re)
        n = other.abs2()
        num = self * other.conj()
        return ComplexQuantity(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return ComplexQuantity.of(complex(self) ** n)
        if n < 0:
            return (ComplexQuantity.of(1) / self) ** -n
        result = ComplexQuantity(Fraction(1) if self.exact else 1.0, Fraction(0) if self.exact else 0.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def cbrt(self) -> "ComplexQuantity":
        """Principal cube root by polar form, argument in (−π, π] divided by 3."""
        r = abs(self)
        if r == 0:
            return ComplexQuantity(0.0, 0.0)
        theta = math.atan2(float(self.im), float(self.re))
        if theta == -math.pi:
            theta = math.pi
        rho = r ** (1.0 / 3.0)
        return ComplexQuantity(rho * math.cos(theta / 3), rho * math.sin(theta / 3))

    def sqrt(self) -> "ComplexQuantity":
        """Principal square root; exact on the real axis when the radicand is rational."""
        if self.im == 0 and isinstance(self.re, Fraction):
            if self.re >= 0:
                return ComplexQuantity(sqrt_exact(self.re), Fraction(0))
            return ComplexQuantity(Fraction(0), sqrt_exact(-self.re))
        return ComplexQuantity.of(cmath.sqrt(complex(self)))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_real(self, tol: float = 0.0) -> bool:
        if tol == 0:
            return self.im == 0
        return abs(float(self.im)) <= tol

    def to_json(self) -> dict:
        return {"re": format_scalar(self.re), "im": format_scalar(self.im)}

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re} + ({self.im})i"


I = ComplexQuantity(Fraction(0), Fraction(1))


def complex_arith(op: str, z, w=None) -> ComplexQuantity:
    """Dispatch ``add``, ``sub``, ``mul``, ``div``, ``conj`` or ``cbrt`` by name."""
    z = ComplexQuantity.of(z)
    if op == "conj":
        return z.conj()
    if op == "cbrt":
        return z.cbrt()
    w = ComplexQuantity.of(w)
    ops = {"add": z.__add__, "sub": z.__sub__, "mul": z.__mul__, "div": z.__truediv__}
    try:
        return ops[op](w)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
