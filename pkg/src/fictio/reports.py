"""JSON-ready report dictionaries for every CLI subcommand.

Scalars serialize through :func:`fictio.scalars.format_scalar`; imaginary
quantities as ``{"re": ..., "im": ...}``.  Field names here are the stable
output schema (see ``docs/schemas``).
"""
from __future__ import annotations

from .imaginary import ComplexQuantity, CubicSolution, ProportionReport, TrisectionResult
from .infinitesimal import LCNumber
from .scalars import format_scalar
from .syncategorematic import DomainResult, ParaphraseReport, TransferReport


def value(x):
    if x is None:
        return None
    if isinstance(x, ComplexQuantity):
        return x.to_json()
    if isinstance(x, LCNumber):
        return x.to_json()
    return format_scalar(x)


def cubic(sol: CubicSolution, tol: float) -> dict:
    worst = max(float(r) for r in sol.residuals)
    return {
        "roots": [value(r) for r in sol.roots],
        "discriminant_term": value(sol.discriminant_term),
        "classification": sol.classification,
        "used_imaginaries": sol.used_imaginaries,
        "residuals": [value(r) for r in sol.residuals],
        "max_residual": value(worst),
        "exact": sol.exact,
        "passed": worst < tol or (sol.exact and worst == 0),
    }


def quadratic(b, c, roots, tol: float) -> dict:
    residuals = [r * r + r * b + c for r in roots]
    mags = [0 if z.exact and z.is_zero() else abs(z) for z in residuals]
    total = roots[0] + roots[1]
    product = roots[0] * roots[1]
    return {
        "b": value(b),
        "c": value(c),
        "roots": [value(r) for r in roots],
        "sum": value(total),
        "product": value(product),
        "used_imaginaries": any(not r.is_real() for r in roots),
        "residuals": [value(m) for m in mags],
        "passed": max(float(m) for m in mags) < tol,
    }


def trisection(result: TrisectionResult, tol: float) -> dict:
    out = {"chord": value(result.chord), "trisected_chord": value(result.trisected_chord)}
    out.update(cubic(result.solution, tol))
    return out


def proportion(report: ProportionReport) -> dict:
    return {
        "a": value(report.a), "b": value(report.b), "c": value(report.c), "d": value(report.d),
        "formal": report.formal,
        "intuition": report.intuition,
        "paradox": report.paradox,
    }


def paraphrase(report: ParaphraseReport, var: str, max_halvings: int) -> dict:
    return {
        "expr": report.expr,
        "var": var,
        "at": value(report.x0),
        "claimed_slope": value(report.claimed_slope),
        "max_halvings": max_halvings,
        "entries": [
            {
                "epsilon": value(e.epsilon),
                "witness_dx": value(e.witness_dx),
                "achieved_error": value(e.achieved_error),
                "halvings_used": e.halvings_used,
                "error": e.error,
            }
            for e in report.entries
        ],
        "passed": report.passed,
    }


def _domain(result: DomainResult) -> dict:
    return {
        "trials": result.trials,
        "agree": result.agree,
        "max_abs_deviation": value(result.max_deviation),
        "resamples": result.resamples,
        "counterexample": result.counterexample,
    }


def transfer(report: TransferReport) -> dict:
    return {
        "lhs": report.lhs,
        "rhs": report.rhs,
        "vars": list(report.variables),
        "seed": report.seed,
        "real": _domain(report.real),
        "lc": _domain(report.lc),
        "passed": report.passed,
    }
