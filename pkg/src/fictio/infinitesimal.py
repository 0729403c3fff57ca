"""Truncated Levi-Civita style series in a positive infinitesimal ``ε``.

A nonzero :class:`LCNumber` is ``ε**v * (c0 + c1 ε + ... + c_{N-1} ε**(N-1))``
with ``c0 != 0``.  ``v > 0`` means infinitesimal, ``v < 0`` infinite.  Every
number carries ``precision_order``: the largest exponent whose coefficient is
still guaranteed.  Multiplication keeps ``N`` orders *relative* to the product
valuation; addition works on absolute exponents and so may lose precision
when leading terms cancel.

Zero is represented without a valuation.  The exact zero has
``precision_order is None``; a zero produced by cancellation remembers the
window it was computed in (it is only known to be ``O(ε**(p+1))``).
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Sequence

from .config import get_config
from .errors import DomainError, PrecisionExhausted, UnboundedQuantity
from .scalars import format_scalar, is_exact, rational_sqrt

INFINITESIMAL = "infinitesimal"
APPRECIABLE = "appreciable"
INFINITE = "infinite"


def _is_scalar(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool) or type(x).__name__ == "Surd"


def _scalar(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


class LCNumber:
    """Immutable truncated series; construct with :func:`lc_from_real`, :func:`epsilon` or :meth:`from_terms`."""

    __slots__ = ("valuation", "coeffs", "precision_order", "order")

    def __init__(self, valuation, coeffs, precision_order, order):
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "precision_order", precision_order)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("LCNumber is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, precision_order: int | None = None, order: int | None = None) -> "LCNumber":
        return cls(None, (), precision_order, order or get_config().truncation_order)

    @classmethod
    def from_terms(cls, terms: dict[int, object] | Sequence, start: int = 0,
                   order: int | None = None) -> "LCNumber":
        """Build from ``{exponent: coeff}`` or a coefficient list beginning at ``start``.

        The result is guaranteed through ``valuation + order - 1``.
        """
        n = order or get_config().truncation_order
        if not isinstance(terms, dict):
            terms = {start + i: c for i, c in enumerate(terms)}
        terms = {k: _scalar(c) for k, c in terms.items() if c != 0}
        if not terms:
            return cls.zero(order=n)
        v = min(terms)
        return _normalize(v, [terms.get(v + i, 0) for i in range(n)], v + n - 1, n)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    @property
    def leading(self):
        if self.is_zero():
            return 0
        return self.coeffs[0]

    def guaranteed_terms(self) -> int:
        """Number of guaranteed coefficients from the valuation upward."""
        if self.is_zero():
            return 0
        return self.precision_order - self.valuation + 1

    def coefficient(self, k: int):
        """Coefficient of ``ε**k``; raises if ``k`` is beyond the guaranteed window."""
        if self.precision_order is not None and k > self.precision_order:
            raise PrecisionExhausted(f"coefficient of ε^{k} is beyond precision order {self.precision_order}")
        if self.is_zero() or k < self.valuation:
            return Fraction(0) if self.exact else 0.0
        return self.coeffs[k - self.valuation]

    def terms(self) -> dict[int, object]:
        """Guaranteed nonzero terms as ``{exponent: coeff}``."""
        if self.is_zero():
            return {}
        return {self.valuation + i: c for i, c in enumerate(self.coeffs[: self.guaranteed_terms()]) if c != 0}

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> "LCNumber":
        if isinstance(other, LCNumber):
            return other
        if _is_scalar(other):
            return lc_from_real(other, order=self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return LCNumber(self.valuation, tuple(-c for c in self.coeffs), self.precision_order, self.order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_add(self, -other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_add(other, -self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_mul(self, lc_inv(other))

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return lc_mul(other, lc_inv(self))

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            raise DomainError("only integer powers of LCNumbers are defined")
        if n < 0:
            return lc_inv(self) ** -n
        result = lc_from_real(1, order=self.order)
        base = self
        while n:
            if n & 1:
                result = lc_mul(result, base)
            n >>= 1
            if n:
                base = lc_mul(base, base)
        return result

    def sqrt(self) -> "LCNumber":
        return lc_sqrt(self)

    def inverse(self) -> "LCNumber":
        return lc_inv(self)

    # -- order ------------------------------------------------------------

    def __eq__(self, other):
        """Equal when the difference cancels through the common guaranteed window."""
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def __lt__(self, other):
        return lc_cmp(self, self._lift(other)) < 0

    def __le__(self, other):
        return lc_cmp(self, self._lift(other)) <= 0

    def __gt__(self, other):
        return lc_cmp(self, self._lift(other)) > 0

    def __ge__(self, other):
        return lc_cmp(self, self._lift(other)) >= 0

    def __bool__(self):
        return not self.is_zero()

    # -- display ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "valuation": self.valuation,
            "coeffs": [format_scalar(c) for c in self.coeffs],
            "precision_order": self.precision_order,
            "classification": classify(self),
        }

    def __repr__(self):
        if self.is_zero():
            return f"LCNumber(0, precision_order={self.precision_order})"
        return f"LCNumber({self}, precision_order={self.precision_order})"

    def __str__(self):
        if self.is_zero():
            return "0" if self.precision_order is None else f"O(ε^{self.precision_order + 1})"
        parts = []
        for k, c in self.terms().items():
            coeff = str(c)
            if k == 0:
                parts.append(coeff)
            elif k == 1:
                parts.append(f"{coeff}ε")
            else:
                parts.append(f"{coeff}ε^{k}")
        return " + ".join(parts) or "0"


def _normalize(v: int, coeffs: list, prec: int, n: int) -> LCNumber:
    """Drop leading zeros from coefficients of ``ε**v, ε**(v+1), ...`` guaranteed through ``prec``."""
    for i, c in enumerate(coeffs):
        if v + i > prec:
            break
        if c != 0:
            val = v + i
            prec = min(prec, val + n - 1)
            kept = list(coeffs[i: i + prec - val + 1])
            zero = Fraction(0) if all(is_exact(c) for c in kept) else 0.0
            kept += [zero] * (n - len(kept))
            return LCNumber(val, tuple(kept), prec, n)
    return LCNumber.zero(prec, n)


def epsilon(order: int | None = None) -> LCNumber:
    """The positive infinitesimal ``ε``."""
    return LCNumber.from_terms({1: 1}, order=order)


def lc_from_real(r, order: int | None = None) -> LCNumber:
    """Embed a real scalar as a constant series (exact rationals stay exact)."""
    if isinstance(r, LCNumber):
        return r
    n = order or get_config().truncation_order
    r = _scalar(r)
    if r == 0:
        return LCNumber.zero(order=n)
    zero = Fraction(0) if is_exact(r) else 0.0
    return LCNumber(0, (r,) + (zero,) * (n - 1), n - 1, n)


def _min_precision(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def lc_add(x: LCNumber, y: LCNumber) -> LCNumber:
    n = min(x.order, y.order)
    prec = _min_precision(x.precision_order, y.precision_order)
    if y.is_zero() and y.precision_order is None:
        return x if x.order == n else _reorder(x, n)
    if x.is_zero() and x.precision_order is None:
        return y if y.order == n else _reorder(y, n)
    live = [t for t in (x, y) if not t.is_zero()]
    if not live:
        return LCNumber.zero(prec, n)
    v0 = min(t.valuation for t in live)
    if prec < v0:
        return LCNumber.zero(prec, n)
    width = prec - v0 + 1
    acc = [Fraction(0)] * width
    for t in live:
        for i, c in enumerate(t.coeffs[: t.guaranteed_terms()]):
            k = t.valuation + i - v0
            if k >= width:
                break
            acc[k] = acc[k] + c
    return _normalize(v0, acc, prec, n)


def _reorder(x: LCNumber, n: int) -> LCNumber:
    if x.is_zero():
        return LCNumber.zero(x.precision_order, n)
    return _normalize(x.valuation, list(x.coeffs), x.precision_order, n)


def lc_mul(x: LCNumber, y: LCNumber) -> LCNumber:
    n = min(x.order, y.order)
    if x.is_zero() or y.is_zero():
        if (x.is_zero() and x.precision_order is None) or (y.is_zero() and y.precision_order is None):
            return LCNumber.zero(order=n)
        if x.is_zero() and y.is_zero():
            return LCNumber.zero(x.precision_order + y.precision_order + 1, n)
        z, w = (x, y) if x.is_zero() else (y, x)
        return LCNumber.zero(z.precision_order + w.valuation, n)
    r = min(x.guaranteed_terms(), y.guaranteed_terms(), n)
    a, b = x.coeffs, y.coeffs
    out = []
    for k in range(r):
        s = a[0] * b[k]
        for j in range(1, k + 1):
            s = s + a[j] * b[k - j]
        out.append(s)
    v = x.valuation + y.valuation
    return _normalize(v, out, v + r - 1, n)


def _unit_part(x: LCNumber) -> tuple[object, list]:
    """Split x = lead * ε**v * (1 + u) and return (lead, [u_0=0, u_1, ...])."""
    lead = x.coeffs[0]
    r = x.guaranteed_terms()
    return lead, [0] + [c / lead for c in x.coeffs[1:r]]


def lc_inv(x: LCNumber) -> LCNumber:
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero")
    lead, u = _unit_part(x)
    r = len(u)
    w = [Fraction(1) if is_exact(lead) else 1.0]
    for k in range(1, r):
        s = u[1] * w[k - 1]
        for j in range(2, k + 1):
            s = s + u[j] * w[k - j]
        w.append(-s)
    inv_lead = 1 / lead
    v = -x.valuation
    return _normalize(v, [c * inv_lead for c in w], v + r - 1, x.order)


def _scalar_sqrt(c):
    if isinstance(c, Fraction):
        root = rational_sqrt(c)
        if root is not None:
            return root
    return math.sqrt(float(c))


def lc_sqrt(x: LCNumber) -> LCNumber:
    """Square root for positive x of even valuation.

    A non-square rational leading coefficient drops the result to binary64.
    """
    if x.is_zero():
        if x.precision_order is None:
            return x
        return LCNumber.zero((x.precision_order + 1) // 2 + (x.precision_order + 1) % 2 - 1, x.order)
    if x.valuation % 2:
        raise DomainError(f"sqrt of a quantity of odd valuation {x.valuation} is not in the field")
    lead, u = _unit_part(x)
    if lead < 0:
        raise DomainError("sqrt of a negative quantity")
    root = _scalar_sqrt(lead)
    r = len(u)
    # s*s = 1 + u, s_0 = 1
    s = [Fraction(1) if is_exact(root) else 1.0]
    for k in range(1, r):
        acc = u[k]
        for j in range(1, k):
            acc = acc - s[j] * s[k - j]
        s.append(acc / 2)
    v = x.valuation // 2
    return _normalize(v, [c * root for c in s], v + r - 1, x.order)


def lc_cmp(x: LCNumber, y: LCNumber) -> int:
    """Return -1, 0 or 1.  Raises PrecisionExhausted when the window cannot decide."""
    d = x - y
    if not d.is_zero():
        return 1 if d.leading > 0 else -1
    if d.precision_order is None or x is y:
        return 0
    raise PrecisionExhausted(
        f"difference cancels through precision order {d.precision_order}; order undecidable"
    )


def standard_part(x: LCNumber):
    """The appreciable part of a finite quantity, all infinitesimal terms discarded."""
    if not isinstance(x, LCNumber):
        return x
    if x.is_zero():
        if x.precision_order is not None and x.precision_order < 0:
            raise PrecisionExhausted("standard part lies beyond the guaranteed window")
        return Fraction(0)
    if x.valuation < 0:
        raise UnboundedQuantity(f"standard part of an infinite quantity (valuation {x.valuation})")
    return x.coefficient(0)


def classify(x: LCNumber) -> str:
    if x.is_zero() or x.valuation > 0:
        return INFINITESIMAL
    if x.valuation < 0:
        return INFINITE
    return APPRECIABLE
