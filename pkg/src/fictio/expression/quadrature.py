"""Adaptive Simpson quadrature with an endpoint-singularity guard."""
from __future__ import annotations

import math
from typing import Callable

from ..errors import QuadratureError

TOL = 1e-10
MAX_INTERVALS = 10 ** 6
ENDPOINT_OFFSET = 1e-12
# panels narrower than this share of the interval are accepted as they are;
# below it an integrand's own rounding noise dominates the error estimate
MIN_RELATIVE_WIDTH = 1e-9


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = TOL, max_intervals: int = MAX_INTERVALS) -> float:
    fa, fm, fb = f(a), f((a + b) / 2), f(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol)]
    min_width = MIN_RELATIVE_WIDTH * (b - a)
    total = 0.0
    intervals = 1
    while stack:
        a, b, fa, fm, fb, whole, tol = stack.pop()
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        delta = left + right - whole
        # stop refining once the local target sinks below float resolution
        floor = 64 * math.ulp(abs(left) + abs(right))
        if abs(delta) <= 15 * max(tol, floor) or b - a < min_width or m in (a, b):
            total += left + right + delta / 15
            continue
        intervals += 1
        if intervals > max_intervals:
            raise QuadratureError(f"no convergence within {max_intervals} subintervals")
        stack.append((a, m, fa, flm, fm, left, tol / 2))
        stack.append((m, b, fm, frm, fb, right, tol / 2))
    if not math.isfinite(total):
        raise QuadratureError("integrand is not finite on the interval")
    return total


def _finite_at(f, t) -> bool:
    try:
        value = f(t)
    except (ArithmeticError, ValueError):
        return False
    return math.isfinite(value)


def _offset_integral(h: Callable[[float], float], top: float, tol: float, end: float) -> float:
    """∫_0^top h(u) du where h may not be evaluable at u = 0.

    The sliver [0, d] is extrapolated linearly from h(d) and h(2d).  An
    integrable inverse-square-root end makes h smooth in u; if h still varies
    by more than a percent across the sliver the end is rejected.
    """
    # the offset in t is d*d; keep it well clear of float spacing at `end`
    d = math.sqrt(max(ENDPOINT_OFFSET, 1024 * math.ulp(end)))
    if top <= 2 * d:
        return top * h(top / 2)
    hd, h2d = h(d), h(2 * d)
    if not (math.isfinite(hd) and math.isfinite(h2d)) or abs(hd - h2d) > 1e-2 * max(abs(hd), abs(h2d)):
        raise QuadratureError("endpoint singularity is not integrable at this tolerance")
    sliver = d * (1.5 * hd - 0.5 * h2d)
    return adaptive_simpson(h, d, top, tol) + sliver


def integrate(f: Callable[[float], float], a: float, b: float, tol: float = TOL,
              _depth: int = 0) -> float:
    """∫_a^b f, tolerating integrable inverse-square-root singularities at the ends.

    A singular end is removed by the substitution ``t = end ± u²``.
    """
    if a == b:
        return 0.0
    if b < a:
        return -integrate(f, b, a, tol, _depth)
    lower_ok, upper_ok = _finite_at(f, a), _finite_at(f, b)
    if lower_ok and upper_ok:
        return adaptive_simpson(f, a, b, tol)
    if not lower_ok and not upper_ok:
        if _depth:
            raise QuadratureError(f"integrand is singular at both ends of [{a}, {b}]")
        m = (a + b) / 2
        return integrate(f, a, m, tol / 2, 1) + integrate(f, m, b, tol / 2, 1)
    width = math.sqrt(b - a)
    if not lower_ok:
        return _offset_integral(lambda u: 2 * u * f(a + u * u), width, tol, a)
    return _offset_integral(lambda u: 2 * u * f(b - u * u), width, tol, b)
