"""Imaginary quantities and the cubic machinery built on them."""
from .quantity import ComplexQuantity, I, complex_arith
from .solvers import (
    IRREDUCIBLE,
    ONE_REAL,
    REPEATED,
    CubicProblem,
    CubicSolution,
    ProportionReport,
    TrisectionResult,
    bombelli_extract_cbrt,
    cardan_formula,
    check_proportion,
    depress_cubic,
    girard_trisect,
    solve_cubic_general,
    solve_quadratic,
)

__all__ = [
    "ComplexQuantity", "I", "complex_arith", "IRREDUCIBLE", "ONE_REAL", "REPEATED",
    "CubicProblem", "CubicSolution", "ProportionReport", "TrisectionResult",
    "bombelli_extract_cbrt", "cardan_formula", "check_proportion", "depress_cubic",
    "girard_trisect", "solve_cubic_general", "solve_quadratic",
]
