"""Command-line front door.

Exit codes: 0 success or passing check, 1 mathematical failure (failed
check, residual over tolerance, domain error), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction
from typing import Callable

from . import reports
from .config import RunConfig, load_config, use_config
from .errors import ExprSyntaxError, FictioError
from .expression import differentiate, parse, render, tangent_data
from .imaginary import (
    ComplexQuantity,
    CubicProblem,
    bombelli_extract_cbrt,
    cardan_formula,
    check_proportion,
    depress_cubic,
    girard_trisect,
    solve_cubic_general,
    solve_quadratic,
)
from .scalars import parse_scalar
from .syncategorematic import DEFAULT_MAX_HALVINGS, paraphrase_check, transfer_identity_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _scalar(text: str, config: RunConfig):
    try:
        return parse_scalar(text, config.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _scalar_list(text: str, config: RunConfig) -> list:
    return [_scalar(t, config) for t in text.split(",") if t.strip()]


def _env(pairs: list[str] | None, config: RunConfig) -> dict:
    env = {}
    for chunk in pairs or []:
        for item in chunk.split(","):
            if not item.strip():
                continue
            name, sep, val = item.partition("=")
            if not sep or not name.strip().isidentifier():
                raise UsageError(f"--env expects name=value, got {item!r}")
            env[name.strip()] = _scalar(val, config)
    return env


def _expr(text: str):
    return parse(text)


def _out(x, config: RunConfig):
    """Report a calculus result in the active mode."""
    if config.mode == "numeric" and isinstance(x, Fraction):
        x = float(x)
    return reports.value(x)


# -- subcommand handlers: (args, config) -> report dict ---------------------

def cmd_solve_quadratic(args, config):
    b, c = _scalar(args.b, config), _scalar(args.c, config)
    return reports.quadratic(b, c, solve_quadratic(b, c, mode=config.mode), config.tolerance)


def cmd_solve_cubic(args, config):
    general = [args.a, args.b, args.c, args.d]
    if any(v is not None for v in general):
        if any(v is None for v in general) or args.p is not None or args.q is not None:
            raise UsageError("give either --p/--q or all of --a --b --c --d")
        a, b, c, d = (_scalar(v, config) for v in general)
        sol = solve_cubic_general(a, b, c, d, mode=config.mode, search_bound=args.bound)
        out = {"a": reports.value(a), "b": reports.value(b), "c": reports.value(c), "d": reports.value(d),
               "p": reports.value(sol.problem.p), "q": reports.value(sol.problem.q),
               "shift": reports.value(sol.shift)}
    else:
        if args.p is None or args.q is None:
            raise UsageError("solve-cubic needs --p and --q (or --a --b --c --d)")
        p, q = _scalar(args.p, config), _scalar(args.q, config)
        sol = cardan_formula(CubicProblem(p, q), mode=config.mode, search_bound=args.bound)
        out = {"p": reports.value(sol.problem.p), "q": reports.value(sol.problem.q), "shift": reports.value(0 * p)}
    out.update(reports.cubic(sol, config.tolerance))
    return out


def cmd_depress(args, config):
    a, b, c, d = (_scalar(v, config) for v in (args.a, args.b, args.c, args.d))
    prob, shift = depress_cubic(a, b, c, d, mode=config.mode)
    return {"a": reports.value(a), "b": reports.value(b), "c": reports.value(c), "d": reports.value(d),
            "p": reports.value(prob.p), "q": reports.value(prob.q), "shift": reports.value(shift)}


def cmd_bombelli_cbrt(args, config):
    exact = config.replace(mode="exact")
    z = ComplexQuantity(_scalar(args.re, exact), _scalar(args.im, exact))
    root = bombelli_extract_cbrt(z, args.bound)
    return {"z": reports.value(z), "bound": args.bound, "root": reports.value(root),
            "cube": reports.value(root * root * root), "passed": root * root * root == z}


def cmd_trisect(args, config):
    result = girard_trisect(_scalar(args.chord, config), mode=config.mode, tol=config.tolerance)
    return reports.trisection(result, config.tolerance)


def cmd_diff(args, config):
    expr = _expr(args.expr)
    x0 = _scalar(args.at, config)
    env = _env(args.env, config)
    return {"expr": render(expr), "var": args.var, "at": reports.value(x0),
            "env": {k: reports.value(v) for k, v in env.items()},
            "derivative": _out(differentiate(expr, args.var, x0, env), config)}


def cmd_tangent(args, config):
    expr = _expr(args.expr)
    x0 = _scalar(args.at, config)
    env = _env(args.env, config)
    t = tangent_data(expr, x0, env, var=args.var)
    return {"expr": render(expr), "var": args.var, "at": reports.value(x0),
            "env": {k: reports.value(v) for k, v in env.items()},
            "ordinate": _out(t.ordinate, config), "slope": _out(t.slope, config),
            "subtangent": _out(t.subtangent, config), "subtangent_error": t.subtangent_error,
            "tangent_line": {"slope": _out(t.line_slope, config),
                             "intercept": _out(t.line_intercept, config)}}


def cmd_paraphrase_check(args, config):
    expr = _expr(args.expr)
    numeric = config.replace(mode="numeric")
    eps = _scalar_list(args.eps, numeric)
    if not eps:
        raise UsageError("--eps needs at least one value")
    report = paraphrase_check(expr, _scalar(args.at, config), _scalar(args.slope, config), eps,
                              max_halvings=args.max_halvings, var=args.var, env=_env(args.env, config))
    return reports.paraphrase(report, args.var, args.max_halvings)


def cmd_transfer_check(args, config):
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    report = transfer_identity_check(_expr(args.lhs), _expr(args.rhs), names, trials=args.trials,
                                     seed=config.seed, mode=config.mode, tol=config.tolerance)
    return reports.transfer(report)


def cmd_proportion(args, config):
    terms = (_scalar(v, config) for v in (args.a, args.b, args.c, args.d))
    return reports.proportion(check_proportion(*terms, mode=config.mode))


HANDLERS: dict[str, Callable] = {
    "solve-quadratic": cmd_solve_quadratic,
    "solve-cubic": cmd_solve_cubic,
    "depress": cmd_depress,
    "bombelli-cbrt": cmd_bombelli_cbrt,
    "trisect": cmd_trisect,
    "diff": cmd_diff,
    "tangent": cmd_tangent,
    "paraphrase-check": cmd_paraphrase_check,
    "transfer-check": cmd_transfer_check,
    "proportion": cmd_proportion,
}


# -- parser -----------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    g = parser.add_argument_group("global options")
    g.add_argument("--mode", choices=["exact", "numeric"], default=default)
    g.add_argument("--order", type=int, default=default, help="truncation order N (>= 2)")
    g.add_argument("--tol", type=float, default=default, help="residual tolerance")
    g.add_argument("--seed", type=int, default=default)
    g.add_argument("--output", choices=["json", "text"], default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fictio", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    p = add("solve-quadratic", "roots of x^2 + b x + c = 0")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)

    p = add("solve-cubic", "x^3 = p x + q, or a x^3 + b x^2 + c x + d = 0")
    for flag in ("--p", "--q", "--a", "--b", "--c", "--d"):
        p.add_argument(flag)
    p.add_argument("--bound", type=int, default=1000, help="exact cube-root search bound")

    p = add("depress", "depress a x^3 + b x^2 + c x + d")
    for flag in ("--a", "--b", "--c", "--d"):
        p.add_argument(flag, required=True)

    p = add("bombelli-cbrt", "exact rational cube root of re + im i")
    p.add_argument("--re", required=True)
    p.add_argument("--im", required=True)
    p.add_argument("--bound", type=int, default=1000)

    p = add("trisect", "Girard trisection of a unit-circle chord")
    p.add_argument("--chord", required=True)

    for name, help_text in (("diff", "infinitesimal derivative"), ("tangent", "tangent and subtangent")):
        p = add(name, help_text)
        p.add_argument("--expr", required=True)
        p.add_argument("--at", required=True)
        p.add_argument("--var", default="x")
        p.add_argument("--env", action="append", help="name=value[,name=value]")

    p = add("paraphrase-check", "epsilon paraphrase of a slope claim")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--slope", required=True)
    p.add_argument("--eps", required=True, help="comma-separated list")
    p.add_argument("--max-halvings", type=_positive_int, default=DEFAULT_MAX_HALVINGS)
    p.add_argument("--var", default="x")
    p.add_argument("--env", action="append")

    p = add("transfer-check", "identity check over reals and series points")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--vars", required=True, help="comma-separated variable names")
    p.add_argument("--trials", type=_positive_int, default=100)

    p = add("proportion", "does a : b :: c : d?")
    for flag in ("--a", "--b", "--c", "--d"):
        p.add_argument(flag, required=True)

    p = add("batch", "run a line-delimited JSON corpus")
    p.add_argument("path")
    p.add_argument("--parallel", type=_positive_int, default=1)
    return parser


def resolve_config(args) -> RunConfig:
    return load_config({
        "mode": getattr(args, "mode", None),
        "truncation_order": getattr(args, "order", None),
        "tolerance": getattr(args, "tol", None),
        "seed": getattr(args, "seed", None),
        "output": getattr(args, "output", None),
    })


def execute(command: str, args, config: RunConfig) -> tuple[int, dict]:
    """Run one subcommand; map outcomes onto the exit-code contract."""
    report = {"command": command, "mode": config.mode}
    try:
        with use_config(config):
            report.update(HANDLERS[command](args, config))
    except (UsageError, ExprSyntaxError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return EXIT_USAGE, report
    except (FictioError, ArithmeticError, ValueError, AssertionError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return EXIT_FAIL, report
    return (EXIT_OK if report.get("passed", True) else EXIT_FAIL), report


def _text(obj, prefix="") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for key, val in obj.items():
            lines += _text(val, f"{prefix}{key}.")
        return lines
    if isinstance(obj, list):
        lines = []
        for i, val in enumerate(obj):
            lines += _text(val, f"{prefix}{i}.")
        return lines
    return [f"{prefix[:-1]}: {obj}"]


def emit(report: dict, config: RunConfig, stream=None):
    stream = stream or sys.stdout
    if config.output == "json":
        stream.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(_text(report)) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
    except (ValueError, OSError) as exc:
        stderr.write(f"fictio: configuration error: {exc}\n")
        return EXIT_USAGE
    if args.command == "batch":
        from .batch import run_batch

        code, report = run_batch(args.path, config, parallel=args.parallel)
    else:
        code, report = execute(args.command, args, config)
    if code == EXIT_USAGE and "error" in report:
        stderr.write(f"fictio {args.command}: {report['error']['message']}\n")
    emit(report, config, stdout)
    return code


def main():
    sys.exit(run())


def parse_command(command: str, argv: list[str]):
    """Parse a subcommand's flags without touching the process streams."""
    parser = build_parser()
    sink = io.StringIO()
    with contextlib.redirect_stderr(sink), contextlib.redirect_stdout(sink):
        try:
            return parser.parse_args([command, *argv])
        except SystemExit:
            raise UsageError(sink.getvalue().strip().splitlines()[-1] if sink.getvalue() else "bad arguments")
