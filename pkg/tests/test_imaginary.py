import cmath
import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fictio.errors import DegreeError, DomainError, NotFound
from fictio.imaginary import (
    I, IRREDUCIBLE, ONE_REAL, REPEATED, ComplexQuantity, CubicProblem, bombelli_extract_cbrt,
    cardan_formula, check_proportion, complex_arith, depress_cubic, girard_trisect,
    solve_cubic_general, solve_quadratic,
)
from fictio.scalars import sqrt_exact, surd

SQRT3 = math.sqrt(3)


def same_roots(got, want, tol=1e-9):
    got = [complex(z) for z in got]
    return len(got) == len(want) and any(
        all(abs(g - w) < tol for g, w in zip(got, perm)) for perm in itertools.permutations(want))


# -- complex arithmetic -----------------------------------------------------

def test_cardan_product_is_forty():
    r15 = sqrt_exact(15)
    z = ComplexQuantity(F(5), r15)
    assert z * z.conj() == ComplexQuantity(F(40), F(0))
    assert complex_arith("mul", z, complex_arith("conj", z)) == ComplexQuantity(40, 0)


def test_two_plus_i_cubed():
    assert (2 + I) ** 3 == ComplexQuantity(2, 11)


def test_conj_times_self_is_norm():
    z = ComplexQuantity(F(3, 2), F(-7, 3))
    assert z.conj() * z == ComplexQuantity(z.abs2(), 0)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        complex_arith("div", ComplexQuantity(1, 1), 0)


def test_principal_cube_root_argument():
    w = ComplexQuantity(-8.0, 0.0).cbrt()
    assert abs(complex(w) - (1 + 1j * SQRT3)) < 1e-12


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_cbrt_cubes_back(z):
    w = ComplexQuantity(z.real, z.imag).cbrt()
    assert abs(complex(w) ** 3 - z) <= 1e-9 * max(1.0, abs(z))
    if z != 0:
        assert -math.pi / 3 - 1e-12 < cmath.phase(complex(w)) <= math.pi / 3 + 1e-12


rationals = st.builds(F, st.integers(-30, 30), st.integers(1, 6))


@given(rationals, rationals, rationals, rationals)
def test_complex_field_laws_exact(a, b, c, d):
    z, w = ComplexQuantity(a, b), ComplexQuantity(c, d)
    assert z * w == w * z and z + w == w + z
    assert z.conj().conj() == z
    assert z.abs2() >= 0
    if not w.is_zero():
        assert (z / w) * w == z


# -- quadratic --------------------------------------------------------------

def test_quadratic_cardan_example():
    r1, r2 = solve_quadratic(-10, 40, mode="exact")
    assert r1 == ComplexQuantity(5, surd(0, 1, 15)) and r2 == r1.conj()
    assert r1 + r2 == ComplexQuantity(10, 0)
    assert r1 * r2 == ComplexQuantity(40, 0)


def test_quadratic_trivial_cases():
    assert solve_quadratic(0, 0, mode="exact") == (ComplexQuantity(0, 0), ComplexQuantity(0, 0))
    assert sorted(r.re for r in solve_quadratic(-3, 2, mode="exact")) == [1, 2]


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_quadratic_vieta_numeric(b, c):
    r1, r2 = solve_quadratic(b, c, mode="numeric")
    scale = max(1.0, abs(b), abs(c))
    for r in (r1, r2):
        z = complex(r)
        assert abs(z * z + b * z + c) < 1e-9 * scale * max(1.0, abs(z)) ** 2
    assert abs(complex(r1 + r2) + b) < 1e-9 * scale
    assert abs(complex(r1 * r2) - c) < 1e-9 * scale


@given(rationals, rationals)
def test_quadratic_exact_vieta(b, c):
    r1, r2 = solve_quadratic(b, c, mode="exact")
    assert r1 + r2 == ComplexQuantity(-b, 0)
    assert r1 * r2 == ComplexQuantity(c, 0)


# -- Bombelli ---------------------------------------------------------------

def test_bombelli_extraction():
    assert bombelli_extract_cbrt(ComplexQuantity(2, 11)) == ComplexQuantity(2, 1)
    assert bombelli_extract_cbrt(ComplexQuantity(2, -11)) == ComplexQuantity(2, -1)


def test_bombelli_prefers_the_real_candidate():
    assert bombelli_extract_cbrt(ComplexQuantity(-8, 0)) == ComplexQuantity(-2, 0)


def test_bombelli_not_found():
    with pytest.raises(NotFound):
        bombelli_extract_cbrt(ComplexQuantity(2, 0))
    with pytest.raises(NotFound):
        bombelli_extract_cbrt(ComplexQuantity(F(1000) ** 3 + 1, 0), search_bound=10)


@given(rationals, rationals)
def test_bombelli_recovers_small_cubes(a, b):
    z = ComplexQuantity(a, b) ** 3
    root = bombelli_extract_cbrt(z)
    assert root ** 3 == z


# -- Cardan -----------------------------------------------------------------

def test_bombelli_cubic_numeric():
    sol = cardan_formula(CubicProblem(15, 4), mode="numeric")
    assert sol.discriminant_term == -121
    assert sol.used_imaginaries and sol.classification == IRREDUCIBLE
    assert same_roots(sol.roots, [4, -2 + SQRT3, -2 - SQRT3])
    assert max(sol.residuals) < 1e-9
    assert all(abs(r.im) < 1e-9 for r in sol.roots)


def test_bombelli_cubic_exact():
    sol = cardan_formula(CubicProblem(15, 4), mode="exact")
    assert sol.exact and all(r == 0 for r in sol.residuals)
    assert set(sol.roots) == {ComplexQuantity(4, 0), ComplexQuantity(surd(-2, 1, 3), 0),
                              ComplexQuantity(surd(-2, -1, 3), 0)}


def test_triple_zero_and_pure_cube():
    sol = cardan_formula(CubicProblem(0, 0), mode="exact")
    assert sol.classification == REPEATED and all(r.is_zero() for r in sol.roots)
    sol = cardan_formula(CubicProblem(0, 8), mode="numeric")
    w = cmath.exp(2j * math.pi / 3)
    assert same_roots(sol.roots, [2, 2 * w, 2 * w * w])
    assert sol.classification == ONE_REAL and not sol.used_imaginaries


def test_depress_examples():
    prob, shift = depress_cubic(1, -6, 11, -6, mode="exact")
    assert (prob.p, prob.q, shift) == (1, 0, 2)
    prob, shift = depress_cubic(1, 0, -15, -4, mode="exact")
    assert (prob.p, prob.q, shift) == (15, 4, 0)
    assert depress_cubic(2, -12, 22, -12, mode="exact") == depress_cubic(1, -6, 11, -6, mode="exact")
    with pytest.raises(DegreeError):
        depress_cubic(0, 1, 2, 3)


def test_general_cubic_examples():
    sol = solve_cubic_general(1, -6, 11, -6, mode="exact")
    assert sorted(r.re for r in sol.roots) == [1, 2, 3]
    sol = solve_cubic_general(1, 0, -15, -4, mode="numeric")
    assert same_roots(sol.roots, [4, -2 + SQRT3, -2 - SQRT3])
    sol = solve_cubic_general(1, 0, 0, -1, mode="numeric")
    w = cmath.exp(2j * math.pi / 3)
    assert same_roots(sol.roots, [1, w, w * w]) and sol.classification == ONE_REAL
    with pytest.raises(DegreeError):
        solve_cubic_general(0, 1, 1, 1)


cubic_coeffs = st.integers(-100, 100)


@given(cubic_coeffs, cubic_coeffs)
def test_cardan_invariants(p, q):
    sol = cardan_formula(CubicProblem(p, q), mode="numeric")
    assert len(sol.roots) == 3
    assert max(sol.residuals) < 1e-9
    assert abs(sum(complex(r) for r in sol.roots)) < 1e-9
    disc = F(q * q, 4) - F(p ** 3, 27)
    assert sol.used_imaginaries == (disc < 0)
    if disc < 0:
        assert all(abs(r.im) < 1e-9 for r in sol.roots)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 4))
def test_exact_cardan_on_rational_roots(r1, r2, den):
    roots = [F(r1, den), F(r2, den), -F(r1 + r2, den)]
    p = -(roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2])
    q = roots[0] * roots[1] * roots[2]
    sol = cardan_formula(CubicProblem(p, q), mode="exact")
    assert all(r == 0 for r in sol.residuals)
    assert sorted(r.re for r in sol.roots) == sorted(roots)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_general_agrees_with_depressed(b, c, d):
    general = solve_cubic_general(1, b, c, d, mode="numeric")
    prob, shift = depress_cubic(1, b, c, d, mode="numeric")
    direct = cardan_formula(prob, mode="numeric")
    assert same_roots(general.roots, [complex(r) + shift for r in direct.roots], tol=1e-6)


def test_continuity_across_discriminant_boundary():
    # p = 3 has its boundary at q = 2, where x = 1 becomes a double root
    step = 1e-4
    qs = [1.99 + k * step for k in range(201)]
    prev = None
    for q in qs:
        roots = [complex(r) for r in cardan_formula(CubicProblem(3.0, q), mode="numeric").roots]
        if prev is not None:
            move = min(max(abs(a - b) for a, b in zip(prev, perm))
                       for perm in itertools.permutations(roots))
            assert move <= 2 * math.sqrt(step)
        prev = roots


# -- trisection -------------------------------------------------------------

@pytest.mark.parametrize("chord,expected", [
    (math.sqrt(2), 2 * math.sin(math.radians(15))),
    (2, 1.0),
    (1, 2 * math.sin(math.radians(10))),
])
def test_trisection_examples(chord, expected):
    assert abs(float(girard_trisect(chord, mode="numeric").trisected_chord) - expected) < 1e-9


@given(st.floats(0.01, 60.0))
def test_trisection_trig_oracle(phi_deg):
    phi = math.radians(phi_deg)
    chord = 2 * math.sin(3 * phi / 2)
    result = girard_trisect(chord, mode="numeric")
    assert abs(float(result.trisected_chord) - 2 * math.sin(phi / 2)) < 1e-9
    if chord < 2:
        assert result.solution.used_imaginaries


@pytest.mark.parametrize("chord", [0, -1, 2.5])
def test_trisection_domain(chord):
    with pytest.raises(DomainError):
        girard_trisect(chord)


# -- proportion -------------------------------------------------------------

def test_arnauld_paradox():
    rep = check_proportion(1, -4, -5, 20)
    assert rep.formal and rep.intuition == "violated" and rep.paradox


def test_ordinary_proportions():
    rep = check_proportion(1, 2, 3, 6)
    assert rep.formal and rep.intuition == "consistent" and not rep.paradox
    assert not check_proportion(1, 2, 3, 5).formal
    with pytest.raises(DomainError):
        check_proportion(1, 0, 3, 4)
