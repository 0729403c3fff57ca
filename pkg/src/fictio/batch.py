"""Batch corpus runner.

Each line of a corpus file is a JSON object ``{"kind", "params", "expect"}``.
``params`` become subcommand flags (``{"p": 15}`` is ``--p 15``; lists are
comma-joined; ``env`` may be an object).  ``expect`` maps dotted field paths
of the subcommand report (``roots``, ``entries.0.witness_dx``) to a value or
to ``{"value": ..., "tol": ...}``.  The reserved key ``exit_code`` (default
0) is compared against the record's exit code.
"""
from __future__ import annotations

import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .config import RunConfig

GLOBAL_KEYS = {"mode": "mode", "order": "truncation_order", "tol": "tolerance",
               "seed": "seed", "output": "output"}
DEFAULT_EXPECT_TOL = 1e-9
_MISSING = object()


class RecordError(ValueError):
    pass


def _flag_value(value) -> str:
    if isinstance(value, bool):
        raise RecordError("boolean parameter values are not supported")
    if isinstance(value, (list, tuple)):
        return ",".join(_flag_value(v) for v in value)
    if isinstance(value, dict):
        return ",".join(f"{k}={_flag_value(v)}" for k, v in value.items())
    return str(value)


def record_argv(params: dict) -> list[str]:
    argv = []
    for key, value in params.items():
        if key in GLOBAL_KEYS:
            continue
        argv += ["--" + key.replace("_", "-"), _flag_value(value)]
    return argv


def record_config(params: dict, base: RunConfig) -> RunConfig:
    changes = {GLOBAL_KEYS[k]: v for k, v in params.items() if k in GLOBAL_KEYS}
    return base.replace(**changes)


# -- expectation matching ---------------------------------------------------

_SURD = re.compile(r"^(?:(?P<a>\S+) (?P<sign>[+-]) )?(?:(?P<b>\S+)\*)?sqrt\((?P<d>\d+)\)$")


def _number(x):
    """Float view of a report scalar, or None if it is not numeric."""
    if isinstance(x, bool) or x is None:
        return None
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str) and (m := _SURD.match(x)):
        b = _number(m["b"]) if m["b"] else 1.0
        a = _number(m["a"]) if m["a"] else 0.0
        if a is None or b is None:
            return None
        return a + (-b if m["sign"] == "-" else b) * math.sqrt(int(m["d"]))
    if isinstance(x, str):
        try:
            return float(Fraction(x))
        except (ValueError, ZeroDivisionError):
            try:
                return float(x)
            except ValueError:
                return None
    return None


def _complex(x):
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        re, im = _number(x["re"]), _number(x["im"])
        if re is not None and im is not None:
            return complex(re, im)
        return None
    n = _number(x)
    return None if n is None else complex(n, 0)


def matches(actual, expected, tol: float) -> bool:
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(actual) != len(expected):
            return False
        unused = list(actual)
        for want in expected:
            for i, have in enumerate(unused):
                if matches(have, want, tol):
                    del unused[i]
                    break
            else:
                return False
        return True
    if isinstance(expected, dict) and isinstance(actual, dict) and set(expected) != {"re", "im"}:
        return set(expected) == set(actual) and all(matches(actual[k], v, tol) for k, v in expected.items())
    if isinstance(expected, (bool, type(None))) or isinstance(actual, (bool, type(None))):
        return actual is expected
    want, have = _complex(expected), _complex(actual)
    if want is not None and have is not None:
        return abs(want - have) <= tol
    return actual == expected


def lookup(report, path: str):
    node = report
    for part in path.split("."):
        if isinstance(node, dict) and part in node:
            node = node[part]
        elif isinstance(node, list) and part.lstrip("-").isdigit() and -len(node) <= int(part) < len(node):
            node = node[int(part)]
        else:
            return _MISSING
    return node


def _deviation(actual, expected):
    a, e = _complex(actual), _complex(expected)
    if a is None or e is None:
        return None
    d = abs(a - e)
    return d if math.isfinite(d) else None


def check_expectations(report: dict, code: int, expect: dict) -> list[dict]:
    problems = []
    want_code = expect.get("exit_code", 0)
    if code != want_code:
        problems.append({"field": "exit_code", "expected": want_code, "actual": code})
    for path, rule in expect.items():
        if path == "exit_code":
            continue
        if isinstance(rule, dict) and "value" in rule:
            want, tol = rule["value"], float(rule.get("tol", DEFAULT_EXPECT_TOL))
        else:
            want, tol = rule, DEFAULT_EXPECT_TOL
        have = lookup(report, path)
        if have is _MISSING:
            problems.append({"field": path, "expected": want, "actual": None, "reason": "missing field"})
        elif not matches(have, want, tol):
            entry = {"field": path, "expected": want, "actual": have, "tol": tol}
            dev = _deviation(have, want)
            if dev is not None:
                entry["deviation"] = float(f"{dev:.6g}")
            problems.append(entry)
    return problems


# -- execution --------------------------------------------------------------

def _parse_record(line: str) -> dict:
    from .cli import HANDLERS

    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON: {exc.msg}") from None
    if not isinstance(record, dict):
        raise RecordError("record must be a JSON object")
    extra = set(record) - {"kind", "params", "expect", "name"}
    if extra:
        raise RecordError(f"unknown record keys: {sorted(extra)}")
    kind = record.get("kind")
    if kind not in HANDLERS:
        raise RecordError(f"unknown kind {kind!r}")
    params = record.get("params", {})
    expect = record.get("expect", {})
    if not isinstance(params, dict) or not isinstance(expect, dict):
        raise RecordError("params and expect must be objects")
    return record


def run_record(job) -> dict:
    """Execute one corpus line; runs in worker processes too."""
    from .cli import EXIT_USAGE, UsageError, execute, parse_command

    lineno, line, base = job
    out = {"line": lineno}
    try:
        record = _parse_record(line)
        if "name" in record:
            out["name"] = record["name"]
        out["kind"] = record["kind"]
        params = record.get("params", {})
        config = record_config(params, base)
        args = parse_command(record["kind"], record_argv(params))
    except (RecordError, UsageError, ValueError, TypeError) as exc:
        out.update(verdict="parse-error", error=str(exc))
        return out
    code, report = execute(record["kind"], args, config)
    if code == EXIT_USAGE:
        # bad scalar or expression text inside params
        out.update(verdict="parse-error", error=report["error"]["message"])
        return out
    problems = check_expectations(report, code, record.get("expect", {}))
    out.update(verdict="fail" if problems else "pass", exit_code=code, report=report)
    if problems:
        out["deviations"] = problems
    return out


def run_batch(path: str, config: RunConfig, parallel: int = 1) -> tuple[int, dict]:
    """Run every record of ``path``; exit 0 iff all pass, 2 if unreadable."""
    report = {"command": "batch", "mode": config.mode, "path": str(path)}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        report["error"] = {"type": type(exc).__name__, "message": f"cannot read {path}: {exc.strerror}"}
        return 2, report
    jobs = [(i, line, config) for i, line in enumerate(lines, 1) if line.strip()]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run_record, jobs))
    else:
        results = [run_record(job) for job in jobs]
    passed = sum(r["verdict"] == "pass" for r in results)
    report["records"] = results
    report["summary"] = {"total": len(results), "passed": passed, "failed": len(results) - passed}
    report["passed"] = passed == len(results)
    return (0 if report["passed"] else 1), report
