"""Classical solvers that pass through imaginary quantities.

Every root is checked by substitution.  Exact mode tries to stay inside the
rationals extended by at most one square root (Cardan's 5 ± √−15, the
−2 ± √3 of Bombelli's cubic); when that fails the numeric route runs and
rational roots are recovered afterwards by exact substitution.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..config import get_config
from ..errors import DegreeError, DomainError, NotFound
from ..scalars import coerce, is_exact, rational_cbrt, rational_sqrt, sqrt_exact, surd
from .quantity import ComplexQuantity

IRREDUCIBLE = "three-distinct-real-irreducible"
ONE_REAL = "one-real-two-complex"
REPEATED = "repeated-root"

DEFAULT_SEARCH_BOUND = 1000
CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class CubicProblem:
    """The depressed cubic ``x**3 = p*x + q``."""

    p: object
    q: object

    def residual(self, x) -> ComplexQuantity:
        x = ComplexQuantity.of(x)
        return x * x * x - x * self.p - self.q


@dataclass(frozen=True)
class CubicSolution:
    roots: tuple
    discriminant_term: object
    classification: str
    used_imaginaries: bool
    residuals: tuple
    exact: bool = False
    shift: object = 0
    problem: CubicProblem | None = None

    def real_roots(self, tol: float = 1e-9) -> list:
        return [r.re for r in self.roots if r.is_real(0 if r.exact else tol)]


@dataclass(frozen=True)
class ProportionReport:
    a: object
    b: object
    c: object
    d: object
    formal: bool
    intuition: str
    paradox: bool = field(default=False)


def _mode(mode):
    return mode or get_config().mode


def _magnitude(value) -> object:
    """Residual magnitude: exact zero stays an exact zero."""
    value = ComplexQuantity.of(value)
    if value.exact and value.is_zero():
        return Fraction(0)
    return abs(value)


def _sort_roots(roots):
    return tuple(sorted(roots, key=lambda z: (-float(z.re), -float(z.im))))


# -- quadratic --------------------------------------------------------------

def solve_quadratic(b, c, mode=None) -> tuple[ComplexQuantity, ComplexQuantity]:
    """Roots of ``x**2 + b*x + c = 0`` by completing the square."""
    mode = _mode(mode)
    b, c = coerce(b, mode), coerce(c, mode)
    half = -b / 2
    disc = half * half - c
    if mode == "exact":
        if disc >= 0:
            s = sqrt_exact(disc)
            return ComplexQuantity(half + s, 0), ComplexQuantity(half - s, 0)
        s = sqrt_exact(-disc)
        return ComplexQuantity(half, s), ComplexQuantity(half, -s)
    if disc >= 0:
        s = math.sqrt(disc)
        big = half + math.copysign(s, half) if half != 0 else s
        small = c / big if big != 0 else -big
        r1, r2 = sorted((big, small), reverse=True)
        return ComplexQuantity(r1, 0.0), ComplexQuantity(r2, 0.0)
    s = math.sqrt(-disc)
    return ComplexQuantity(half, s), ComplexQuantity(half, -s)


# -- Bombelli ---------------------------------------------------------------

def bombelli_extract_cbrt(z, search_bound: int = DEFAULT_SEARCH_BOUND) -> ComplexQuantity:
    """Find rational ``a + b i`` with ``(a + b i)**3 == z`` exactly.

    Candidates come from the three polar cube roots, rationalized with
    denominators at most ``search_bound``; only those that cube back to ``z``
    exactly are kept.  Ties prefer a real root, then the smallest ``|b|``,
    then the smallest ``|a|``.
    """
    z = ComplexQuantity.of(z)
    if not (isinstance(z.re, Fraction) and isinstance(z.im, Fraction)):
        raise DomainError("exact extraction needs rational components")
    if z.is_zero():
        return ComplexQuantity(0, 0)
    # |a + bi|**2 must be the rational cube root of |z|**2
    modulus2 = rational_cbrt(z.abs2())
    if modulus2 is None:
        raise NotFound(f"|z|^2 = {z.abs2()} is not a rational cube")
    radius = math.sqrt(modulus2)
    arg = math.atan2(float(z.im), float(z.re))
    found = set()
    for k in range(3):
        phi = (arg + 2 * math.pi * k) / 3
        a = Fraction(radius * math.cos(phi)).limit_denominator(search_bound)
        rest = modulus2 - a * a
        b_abs = rational_sqrt(rest) if rest >= 0 else None
        if b_abs is None:
            continue
        for b in {b_abs, -b_abs}:
            if max(abs(a.numerator), abs(b.numerator)) > search_bound or b.denominator > search_bound:
                continue
            w = ComplexQuantity(a, b)
            if w * w * w == z:
                found.add((a, b))
    if not found:
        raise NotFound(f"no rational cube root of {z} within bound {search_bound}")
    a, b = min(found, key=lambda ab: (ab[1] != 0, abs(ab[1]), abs(ab[0])))
    return ComplexQuantity(a, b)


# -- cubic ------------------------------------------------------------------

_OMEGA_EXACT = ComplexQuantity(Fraction(-1, 2), surd(0, Fraction(1, 2), 3))
_OMEGA_FLOAT = ComplexQuantity(-0.5, math.sqrt(3) / 2)


def _combine(u: ComplexQuantity, v: ComplexQuantity, omega: ComplexQuantity) -> list:
    omega2 = omega.conj()
    return [u + v, omega * u + omega2 * v, omega2 * u + omega * v]


def _cardan_exact(p: Fraction, q: Fraction, disc: Fraction, bound: int):
    if p == 0 and q == 0:
        return [ComplexQuantity(0, 0)] * 3
    root = rational_sqrt(abs(disc))
    if root is None:
        return None
    half = q / 2
    if disc >= 0:
        # pick the branch with the larger radicand so u is never 0
        radicand = ComplexQuantity(half + root if half >= 0 else half - root, 0)
    else:
        radicand = ComplexQuantity(half, root)
    try:
        u = bombelli_extract_cbrt(radicand, bound)
    except NotFound:
        return None
    v = ComplexQuantity(p / 3, 0) / u
    return _combine(u, v, _OMEGA_EXACT)


def _cardan_numeric(p: float, q: float, disc: float) -> list:
    half = q / 2
    if disc >= 0:
        s = math.sqrt(disc)
        big = half + math.copysign(s, half) if half != 0 else s
        # real radicand: take the real cube root
        u = ComplexQuantity(math.copysign(abs(big) ** (1.0 / 3.0), big), 0.0)
    else:
        u = ComplexQuantity(half, math.sqrt(-disc)).cbrt()
    if u.is_zero():
        v = ComplexQuantity(0.0, 0.0)
    else:
        # pairing u*v = p/3 keeps the two radicals conjugate
        v = ComplexQuantity(p / 3, 0.0) / u
    return _combine(u, v, _OMEGA_FLOAT)


def _recover_exact(p: Fraction, q: Fraction, roots: list, bound: int):
    """Rationalize a numeric real root, verify it exactly, deflate to a quadratic."""
    prob = CubicProblem(p, q)
    for z in roots:
        re, im = float(z.re), float(z.im)
        if abs(im) > CLUSTER_TOL * max(1.0, abs(re)):
            continue
        r = Fraction(re).limit_denominator(bound)
        if prob.residual(r).is_zero():
            # x^3 - p x - q = (x - r)(x^2 + r x + r^2 - p)
            rest = solve_quadratic(r, r * r - p, mode="exact")
            return [ComplexQuantity(r, 0), *rest]
    return None


def _classify(disc, roots, exact: bool) -> str:
    if disc == 0:
        return REPEATED
    if not exact:
        for z, w in itertools.combinations(roots, 2):
            if abs(ComplexQuantity.of(complex(z)) - ComplexQuantity.of(complex(w))) < CLUSTER_TOL:
                return REPEATED
    return IRREDUCIBLE if disc < 0 else ONE_REAL


def cardan_formula(prob: CubicProblem, mode=None, search_bound: int = DEFAULT_SEARCH_BOUND) -> CubicSolution:
    """Solve ``x**3 = p x + q`` with Cardan's radicals and conjugate pairing.

    ``u`` is a cube root of ``q/2 + sqrt(q**2/4 - p**3/27)`` and ``v = (p/3)/u``,
    so when the square root is imaginary the two radicals are conjugate and
    their imaginary parts cancel.  The three roots are ``u + v``,
    ``ωu + ω²v`` and ``ω²u + ωv``.
    """
    mode = _mode(mode)
    p, q = coerce(prob.p, mode), coerce(prob.q, mode)
    prob = CubicProblem(p, q)
    disc = q * q / 4 - p * p * p / 27
    roots = None
    if mode == "exact":
        roots = _cardan_exact(p, q, disc, search_bound)
        if roots is None:
            numeric = _cardan_numeric(float(p), float(q), float(disc))
            roots = _recover_exact(p, q, numeric, search_bound) or numeric
    else:
        roots = _cardan_numeric(p, q, disc)
    roots = _sort_roots(roots)
    exact = all(z.exact for z in roots)
    return CubicSolution(
        roots=roots,
        discriminant_term=disc,
        classification=_classify(disc, roots, exact),
        used_imaginaries=bool(disc < 0),
        residuals=tuple(_magnitude(prob.residual(z)) for z in roots),
        exact=exact,
        problem=prob,
    )


def depress_cubic(a, b, c, d, mode=None) -> tuple[CubicProblem, object]:
    """Substitute ``x = t + shift`` in ``a x³ + b x² + c x + d`` to reach ``t³ = p t + q``."""
    mode = _mode(mode)
    a, b, c, d = (coerce(v, mode) for v in (a, b, c, d))
    if a == 0:
        raise DegreeError("leading coefficient is zero; not a cubic")
    b, c, d = b / a, c / a, d / a
    shift = -b / 3
    p = b * b / 3 - c
    q = -(2 * b * b * b / 27 - b * c / 3 + d)
    return CubicProblem(p, q), shift


def solve_cubic_general(a, b, c, d, mode=None, search_bound: int = DEFAULT_SEARCH_BOUND) -> CubicSolution:
    """Depress, solve by Cardan, shift back.  Residuals are for the monic cubic."""
    mode = _mode(mode)
    prob, shift = depress_cubic(a, b, c, d, mode=mode)
    depressed = cardan_formula(prob, mode=mode, search_bound=search_bound)
    a, b, c, d = (coerce(v, mode) for v in (a, b, c, d))
    roots = _sort_roots(z + shift for z in depressed.roots)

    def monic(x):
        return ((x + b / a) * x + c / a) * x + d / a

    return CubicSolution(
        roots=roots,
        discriminant_term=depressed.discriminant_term,
        classification=depressed.classification,
        used_imaginaries=depressed.used_imaginaries,
        residuals=tuple(_magnitude(monic(z)) for z in roots),
        exact=all(z.exact for z in roots),
        shift=shift,
        problem=prob,
    )


@dataclass(frozen=True)
class TrisectionResult:
    chord: object
    trisected_chord: object
    solution: CubicSolution


def girard_trisect(chord, mode=None, tol: float | None = None) -> TrisectionResult:
    """Chord of a third of the angle subtended by ``chord`` on the unit circle.

    Solves ``x³ = 3x − chord`` and takes the smallest positive real root.
    """
    mode = _mode(mode)
    tol = get_config().tolerance if tol is None else tol
    chord = coerce(chord, mode)
    if not 0 < chord <= 2:
        raise DomainError(f"chord {chord} outside (0, 2]")
    sol = cardan_formula(CubicProblem(3, -chord), mode=mode)
    if chord < 2 and not sol.used_imaginaries:
        raise AssertionError("a trisection below the diameter must pass through imaginaries")
    positive = [x for x in sol.real_roots(tol) if x > 0]
    return TrisectionResult(chord, min(positive, key=float), sol)


def check_proportion(a, b, c, d, mode=None) -> ProportionReport:
    """Is ``a : b :: c : d``?  Compare the cross products and the order pattern."""
    mode = _mode(mode)
    a, b, c, d = (coerce(v, mode) for v in (a, b, c, d))
    if b == 0 or d == 0:
        raise DomainError("proportion terms b and d must be nonzero")
    formal = a * d == b * c

    def sign(x):
        return (x > 0) - (x < 0)

    consistent = sign(a - b) == sign(c - d)
    intuition = "consistent" if consistent else "violated"
    return ProportionReport(a, b, c, d, formal, intuition, paradox=formal and not consistent)
