"""Scalar plumbing: exact rationals, binary64 floats, and real quadratic surds.

Exact-mode quantities are ``fractions.Fraction``; numeric-mode quantities are
``float``.  Roots such as 5 + sqrt(15) need a little more than the rationals, so
:class:`Surd` models ``a + b*sqrt(d)`` with rational ``a, b`` and a fixed
non-square integer ``d``.  Arithmetic that mixes two different radicands has
no exact home and raises ``ValueError``.
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float, "Surd"]

_SQUARE_TRIAL_LIMIT = 10_000


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd)) and not isinstance(x, bool)


def coerce(x, mode: str):
    """Convert ``x`` to the scalar type of ``mode``."""
    if mode == "exact":
        if isinstance(x, Surd):
            return x
        if isinstance(x, str):
            return parse_scalar(x, "exact")
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x, "numeric")
    return float(x)


def parse_scalar(text: str, mode: str = "exact"):
    """Parse ``"3"``, ``"-5/2"``, ``"1.4142135624"`` or ``"1e-12"``.

    Decimal literals become the exact rational they spell in exact mode.
    """
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            value = Fraction(Fraction(num.strip()), Fraction(den.strip()))
        else:
            value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a scalar: {text!r}") from exc
    return value if mode == "exact" else float(value)


def format_scalar(x) -> str:
    """Serialize: exact as ``"n/d"``, numeric with 15 significant digits."""
    if isinstance(x, Surd):
        return str(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, numbers.Rational):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    x = float(x)
    if x == 0:
        return "0"
    return f"{x:.15g}"


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def icbrt(n: int) -> int:
    """Floor cube root of a non-negative integer."""
    if n < 0:
        raise ValueError("negative")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def rational_sqrt(r: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    r = Fraction(r)
    if r < 0:
        return None
    num, den = isqrt_exact(r.numerator), isqrt_exact(r.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def rational_cbrt(r: Fraction) -> Fraction | None:
    """Exact real cube root of a rational, or None."""
    r = Fraction(r)
    sign = -1 if r < 0 else 1
    n, d = abs(r.numerator), r.denominator
    cn, cd = icbrt(n), icbrt(d)
    if cn ** 3 != n or cd ** 3 != d:
        return None
    return sign * Fraction(cn, cd)


def _split_square(n: int) -> tuple[int, int]:
    """Write n = s*s*d, pulling out square factors found by trial division."""
    s, d = 1, n
    p = 2
    while p <= _SQUARE_TRIAL_LIMIT and p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1 if p == 2 else 2
    root = isqrt_exact(d)
    if root is not None:
        return s * root, 1
    return s, d


def sqrt_exact(r) -> Union[Fraction, "Surd"]:
    """Square root of a non-negative rational as a Fraction or a Surd."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("sqrt of a negative rational is not real")
    root = rational_sqrt(r)
    if root is not None:
        return root
    # sqrt(n/m) = sqrt(n*m)/m
    s, d = _split_square(r.numerator * r.denominator)
    return surd(0, Fraction(s, r.denominator), d)


def surd(a, b, d: int):
    """Build ``a + b*sqrt(d)``, collapsing to a Fraction when ``b == 0``."""
    a, b = Fraction(a), Fraction(b)
    if b == 0 or d == 1:
        return a + b if d == 1 else a
    return Surd(a, b, d)


class Surd:
    """An element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1 or isqrt_exact(d) is not None:
            raise ValueError(f"radicand {d} must be a non-square integer > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _lift(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError(
                    f"sqrt({self.d}) and sqrt({other.d}) share no quadratic field"
                )
            return other.a, other.b
        if isinstance(other, numbers.Rational) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return float(self) + other if isinstance(other, numbers.Real) else NotImplemented
        return surd(self.a + lifted[0], self.b + lifted[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return float(self) * other if isinstance(other, numbers.Real) else NotImplemented
        c, e = lifted
        return surd(self.a * c + self.b * e * self.d, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        return surd(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return float(self) / other if isinstance(other, numbers.Real) else NotImplemented
        if isinstance(other, Surd):
            return self * other.inverse()
        if lifted[0] == 0:
            raise ZeroDivisionError("division by zero")
        return surd(self.a / lifted[0], self.b / lifted[0], self.d)

    def __rtruediv__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return other / float(self) if isinstance(other, numbers.Real) else NotImplemented
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return float(self) ** n
        if n < 0:
            return self.inverse() ** -n
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 d
        cmp = (self.a * self.a > self.b * self.b * self.d) - (self.a * self.a < self.b * self.b * self.d)
        return sa * cmp

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Surd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return True

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.a == 0:
            return f"{format_scalar(self.b)}*sqrt({self.d})"
        sign = "-" if self.b < 0 else "+"
        return f"{format_scalar(self.a)} {sign} {format_scalar(abs(self.b))}*sqrt({self.d})"
