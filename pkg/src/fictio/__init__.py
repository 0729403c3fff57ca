"""Fictional quantities as artifacts: infinitesimals, imaginaries, and their paraphrases."""
from .config import RunConfig, get_config, load_config, use_config
from .errors import (
    DegreeError, DomainError, ExprSyntaxError, FictioError, NotFound, PrecisionExhausted,
    QuadratureError, UnboundedQuantity, UnboundVariable,
)
from .expression import differentiate, evaluate, parse, render, tangent_data
from .imaginary import (
    ComplexQuantity, CubicProblem, CubicSolution, bombelli_extract_cbrt, cardan_formula,
    check_proportion, depress_cubic, girard_trisect, solve_cubic_general, solve_quadratic,
)
from .infinitesimal import (
    LCNumber, classify, epsilon, lc_add, lc_cmp, lc_from_real, lc_inv, lc_mul, lc_sqrt,
    standard_part,
)
from .syncategorematic import paraphrase_check, transfer_identity_check

__version__ = "0.1.0"

__all__ = [
    "RunConfig", "get_config", "load_config", "use_config",
    "DegreeError", "DomainError", "ExprSyntaxError", "FictioError", "NotFound",
    "PrecisionExhausted", "QuadratureError", "UnboundedQuantity", "UnboundVariable",
    "differentiate", "evaluate", "parse", "render", "tangent_data",
    "ComplexQuantity", "CubicProblem", "CubicSolution", "bombelli_extract_cbrt", "cardan_formula",
    "check_proportion", "depress_cubic", "girard_trisect", "solve_cubic_general", "solve_quadratic",
    "LCNumber", "classify", "epsilon", "lc_add", "lc_cmp", "lc_from_real", "lc_inv", "lc_mul",
    "lc_sqrt", "standard_part", "paraphrase_check", "transfer_identity_check",
]
