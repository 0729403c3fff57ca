"""Desk-scale checks of the two reductions of infinitesimal talk.

``paraphrase_check`` replaces "dy/dx equals s" by "for every assignable
error ε there is a finite dx below which the difference quotient is within ε
of s".  ``transfer_identity_check`` evaluates an equational identity at
sampled reals and at sampled series points ``r + r′ε`` and asks whether both
domains agree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .config import get_config
from .errors import FictioError
from .expression import LC, REAL, Expr, evaluate, parse, render
from .infinitesimal import LCNumber, epsilon, lc_from_real
from .scalars import coerce

INITIAL_STEP = Fraction(1, 10)
DEFAULT_MAX_HALVINGS = 60
WORKING_DIGITS = 50
SAMPLE_HEIGHT = 100

_EVAL_ERRORS = (ArithmeticError, ValueError, FictioError)


class SamplingExhausted(FictioError):
    """Too many sample points hit evaluation errors."""


@dataclass(frozen=True)
class EpsilonEntry:
    epsilon: float
    witness_dx: object | None
    achieved_error: object | None
    halvings_used: int
    error: str | None = None


@dataclass(frozen=True)
class ParaphraseReport:
    expr: str
    x0: object
    claimed_slope: object
    entries: tuple[EpsilonEntry, ...]
    passed: bool


def _mp(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def paraphrase_check(expr: Expr | str, x0, claimed_slope, eps_list: Sequence,
                     max_halvings: int = DEFAULT_MAX_HALVINGS, var: str = "x",
                     env: dict | None = None) -> ParaphraseReport:
    """Search ``dx = 0.1 * 2**-k`` for a witness for each assignable error.

    A witness for ε is the first ``dx`` from which this and every later
    halving keep ``|Δy/dx − claimed_slope| < ε``.  Quotients are computed with
    50 significant digits.  Absence of a witness is a desk-scale observation,
    not a proof.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    if max_halvings < 1:
        raise ValueError("max_halvings must be at least 1")
    if any(e <= 0 for e in eps_list):
        raise ValueError("every epsilon must be positive")
    env = dict(env or {})
    errors: list = []
    steps = [INITIAL_STEP / 2 ** k for k in range(max_halvings + 1)]
    with mpmath.workdps(WORKING_DIGITS):
        scope = {k: _mp(v) for k, v in env.items()}
        slope = _mp(claimed_slope)
        base = _mp(x0)
        try:
            f0 = evaluate(expr, {**scope, var: base}, REAL)
        except _EVAL_ERRORS as exc:
            f0, failure = None, f"{type(exc).__name__}: {exc}"
        for dx in steps:
            if f0 is None:
                errors.append(failure)
                continue
            h = _mp(dx)
            try:
                q = (evaluate(expr, {**scope, var: base + h}, REAL) - f0) / h
                errors.append(abs(q - slope))
            except _EVAL_ERRORS as exc:
                errors.append(f"{type(exc).__name__}: {exc}")

    entries = []
    for eps in eps_list:
        bound = _mp(eps)
        witness, tail_ok, problem = None, True, None
        for k in range(max_halvings, -1, -1):
            err = errors[k]
            if isinstance(err, str):
                problem = problem or err
                tail_ok = False
            elif not err < bound:
                tail_ok = False
            if tail_ok:
                witness = k
        if witness is None:
            last = errors[-1]
            entries.append(EpsilonEntry(float(eps), None, None if isinstance(last, str) else float(last),
                                        max_halvings, problem))
        else:
            entries.append(EpsilonEntry(float(eps), steps[witness], float(errors[witness]), witness))
    return ParaphraseReport(render(expr), x0, claimed_slope, tuple(entries),
                            all(e.witness_dx is not None for e in entries))


@dataclass(frozen=True)
class DomainResult:
    trials: int
    agree: bool
    max_deviation: float
    resamples: int
    counterexample: dict | None = None


@dataclass(frozen=True)
class TransferReport:
    lhs: str
    rhs: str
    variables: tuple[str, ...]
    seed: int
    mode: str
    real: DomainResult
    lc: DomainResult
    passed: bool = field(default=False)


def _sample(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-SAMPLE_HEIGHT, SAMPLE_HEIGHT), rng.randint(1, SAMPLE_HEIGHT))


def _deviation(diff) -> float:
    if isinstance(diff, LCNumber):
        return max((abs(float(c)) for c in diff.terms().values()), default=0.0)
    return abs(float(diff))


def _within(left, right, diff, tol: float) -> bool:
    """Numeric agreement: absolute for reals, per coefficient scale for series."""
    if not isinstance(diff, LCNumber):
        return abs(float(diff)) <= tol
    for k, c in diff.terms().items():
        scale = max(1.0, abs(float(left.coefficient(k))), abs(float(right.coefficient(k))))
        if abs(float(c)) > tol * scale:
            return False
    return True


def _run_domain(lhs: Expr, rhs: Expr, variables, trials: int, rng, mode: str, tol: float,
                domain: str) -> DomainResult:
    done = attempts = 0
    agree, worst, counterexample = True, 0.0, None
    while done < trials:
        attempts += 1
        if attempts > 10 * trials:
            raise SamplingExhausted(f"{domain} sampling hit evaluation errors {attempts - 1 - done} times")
        point = {}
        for name in variables:
            value = coerce(_sample(rng), mode)
            if domain == LC:
                value = lc_from_real(value) + epsilon() * coerce(_sample(rng), mode)
            point[name] = value
        try:
            left, right = evaluate(lhs, point, domain), evaluate(rhs, point, domain)
            diff = left - right
        except _EVAL_ERRORS:
            continue
        done += 1
        dev = _deviation(diff)
        if mode == "exact":
            ok = diff.is_zero() if isinstance(diff, LCNumber) else diff == 0
        else:
            ok = _within(left, right, diff, tol)
        if not ok and counterexample is None:
            counterexample = {k: str(v) for k, v in point.items()}
        agree = agree and ok
        worst = max(worst, dev)
    return DomainResult(trials, agree, worst, attempts - done, counterexample)


def transfer_identity_check(lhs: Expr | str, rhs: Expr | str, variables: Sequence[str],
                            trials: int = 100, seed: int | None = None, mode: str | None = None,
                            tol: float | None = None) -> TransferReport:
    """Check ``lhs == rhs`` at real samples and at series samples ``r + r′ε``.

    Samples are rationals with numerator and denominator bounded by 100.
    Points that raise evaluation errors are resampled, up to ten times the
    requested number of trials.
    """
    config = get_config()
    mode = mode or config.mode
    seed = config.seed if seed is None else seed
    tol = config.tolerance if tol is None else tol
    lhs = parse(lhs) if isinstance(lhs, str) else lhs
    rhs = parse(rhs) if isinstance(rhs, str) else rhs
    rng = random.Random(seed)
    real = _run_domain(lhs, rhs, variables, trials, rng, mode, tol, REAL)
    lc = _run_domain(lhs, rhs, variables, trials, rng, mode, tol, LC)
    return TransferReport(render(lhs), render(rhs), tuple(variables), seed, mode, real, lc,
                          passed=real.agree and lc.agree)
