"""Expression trees: parsing, rendering, evaluation, differentiation."""
from .evaluate import COMPLEX, LC, REAL, TangentData, differentiate, evaluate, tangent_data
from .nodes import (
    Add, Constant, Div, Expr, Integral, IntPow, Mul, Neg, Sqrt, Sub, Variable,
    free_variables, render,
)
from .parser import parse
from .quadrature import adaptive_simpson, integrate

__all__ = [
    "COMPLEX", "LC", "REAL", "TangentData", "differentiate", "evaluate", "tangent_data",
    "Add", "Constant", "Div", "Expr", "Integral", "IntPow", "Mul", "Neg", "Sqrt", "Sub",
    "Variable", "free_variables", "render", "parse", "adaptive_simpson", "integrate",
]
