import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from fictio.cli import HANDLERS, run

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "docs" / "schemas"
CORPUS = resources.files("fictio") / "data" / "paper_examples.jsonl"

# argv that produced each golden file (run from the repository root)
GOLDEN_ARGV = {
    "solve-quadratic": ["--mode", "exact", "solve-quadratic", "--b", "-10", "--c", "40"],
    "solve-cubic": ["--mode", "exact", "solve-cubic", "--p", "15", "--q", "4"],
    "depress": ["--mode", "exact", "depress", "--a", "1", "--b", "-6", "--c", "11", "--d", "-6"],
    "bombelli-cbrt": ["bombelli-cbrt", "--re", "2", "--im", "11"],
    "trisect": ["trisect", "--chord", "1.4142135624"],
    "diff": ["--mode", "exact", "diff", "--expr", "x^2/a", "--at", "3", "--env", "a=1"],
    "tangent": ["--mode", "exact", "tangent", "--expr", "x^2", "--at", "1"],
    "paraphrase-check": ["paraphrase-check", "--expr", "x^2", "--at", "1", "--slope", "3",
                         "--eps", "1e-2,1e-4"],
    "transfer-check": ["--mode", "exact", "transfer-check", "--lhs", "(x+y)^2",
                       "--rhs", "x^2+2*x*y+y^2", "--vars", "x,y", "--trials", "20"],
    "proportion": ["--mode", "exact", "proportion", "--a", "1", "--b", "-4", "--c", "-5", "--d", "20"],
    "batch": ["--mode", "exact", "batch", "src/fictio/data/paper_examples.jsonl"],
}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    text = out.getvalue()
    return code, (json.loads(text) if text.lstrip().startswith("{") else text), err.getvalue()


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


# -- documented examples ----------------------------------------------------

def test_bombelli_cubic_command():
    code, rep, _ = call("solve-cubic", "--p", "15", "--q", "4")
    assert code == 0
    roots = sorted(float(r["re"]) for r in rep["roots"])
    assert roots == pytest.approx([-3.7320508075688772, -0.2679491924311228, 4.0], abs=1e-12)
    assert float(rep["discriminant_term"]) == -121 and rep["used_imaginaries"]
    assert all(float(r) < 1e-9 for r in rep["residuals"])


def test_trisect_command():
    code, rep, _ = call("trisect", "--chord", "1.4142135624")
    assert code == 0 and float(rep["trisected_chord"]) == pytest.approx(0.5176380902, abs=1e-9)


def test_paraphrase_command_fails_for_wrong_slope():
    code, rep, _ = call("paraphrase-check", "--expr", "x^2", "--at", "1", "--slope", "3",
                        "--eps", "1e-2,1e-4")
    assert code == 1 and rep["passed"] is False


def test_numeric_scalars_have_fifteen_digits():
    _, rep, _ = call("solve-cubic", "--p", "15", "--q", "4")
    assert {r["re"] for r in rep["roots"]} >= {"-0.267949192431122", "-3.73205080756888"}


# -- exit-code contract -----------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    ["solve-cubic", "--p", "1", "--bogus", "2"],
    ["solve-quadratic", "--b", "1"],
    ["solve-quadratic", "--b", "sqrt2", "--c", "1"],
    ["diff", "--expr", "x^y", "--at", "1"],
    ["diff", "--expr", "x", "--at", "1", "--env", "a"],
    ["solve-cubic", "--p", "1", "--q", "1", "--a", "1"],
    ["batch", "/definitely/not/here.jsonl"],
    ["batch", "x", "--parallel", "0"],
    ["--mode", "fuzzy", "proportion", "--a", "1", "--b", "2", "--c", "3", "--d", "4"],
])
def test_usage_errors_exit_two(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_unknown_subcommand_prints_usage():
    _, _, err = call("frobnicate")
    assert err.startswith("usage:")


@pytest.mark.parametrize("argv", [
    ["trisect", "--chord", "3"],
    ["proportion", "--a", "1", "--b", "0", "--c", "1", "--d", "1"],
    ["diff", "--expr", "sqrt(x)", "--at", "0"],
    ["--tol", "1e-300", "solve-cubic", "--p", "15", "--q", "4"],
    ["--mode", "exact", "transfer-check", "--lhs", "sqrt(x^2)", "--rhs", "x", "--vars", "x"],
    ["depress", "--a", "0", "--b", "1", "--c", "1", "--d", "1"],
    ["bombelli-cbrt", "--re", "2", "--im", "0"],
])
def test_mathematical_failures_exit_one(argv):
    code, rep, _ = call(*argv)
    assert code == 1
    assert rep.get("passed") is False or "error" in rep


def test_zero_slope_tangent_is_not_a_failure():
    code, rep, _ = call("tangent", "--expr", "x^2", "--at", "0")
    assert code == 0 and rep["subtangent"] is None and rep["subtangent_error"]


# -- configuration ----------------------------------------------------------

def test_global_flags_before_or_after_subcommand():
    a = call("--mode", "exact", "diff", "--expr", "x^3", "--at", "2")[1]
    b = call("diff", "--expr", "x^3", "--at", "2", "--mode", "exact")[1]
    assert a == b and a["derivative"] == "12/1"


def test_config_file_and_flag_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "fictio.json"
    cfg.write_text(json.dumps({"mode": "exact", "tolerance": 1e-6}))
    monkeypatch.setenv("FICTIO_CONFIG", str(cfg))
    assert call("diff", "--expr", "x^2", "--at", "1")[1]["mode"] == "exact"
    assert call("--mode", "numeric", "diff", "--expr", "x^2", "--at", "1")[1]["mode"] == "numeric"


def test_bad_config_file(tmp_path, monkeypatch):
    cfg = tmp_path / "fictio.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    monkeypatch.setenv("FICTIO_CONFIG", str(cfg))
    code, _, err = call("diff", "--expr", "x", "--at", "1")
    assert code == 2 and "colour" in err


def test_order_flag_reaches_the_series_field():
    code, rep, _ = call("--order", "2", "--mode", "exact", "diff", "--expr", "x^3", "--at", "2")
    assert code == 0 and rep["derivative"] == "12/1"
    assert call("--order", "1", "diff", "--expr", "x", "--at", "1")[0] == 2


def test_text_output():
    code, text, _ = call("--output", "text", "proportion", "--a", "1", "--b", "-4", "--c", "-5",
                         "--d", "20")
    assert code == 0 and "paradox: True" in text.splitlines()


# -- schemas and goldens ----------------------------------------------------

def test_every_subcommand_has_schema_and_golden():
    for name in [*HANDLERS, "batch"]:
        assert (SCHEMAS / f"{name}.schema.json").exists()
        assert (SCHEMAS / "golden" / f"{name}.json").exists()


@pytest.mark.parametrize("name", sorted(GOLDEN_ARGV))
def test_golden_outputs(name, monkeypatch):
    monkeypatch.chdir(ROOT)
    _, rep, _ = call(*GOLDEN_ARGV[name])
    jsonschema.validate(rep, schema(name))
    golden = json.loads((SCHEMAS / "golden" / f"{name}.json").read_text())
    assert rep == golden


@pytest.mark.parametrize("argv", [
    ["solve-cubic", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"],
    ["solve-quadratic", "--b", "-3", "--c", "2"],
    ["tangent", "--expr", "x^2", "--at", "0"],
    ["paraphrase-check", "--expr", "1/(x - 1)", "--at", "1", "--slope", "0", "--eps", "1e-2"],
    ["transfer-check", "--lhs", "x", "--rhs", "x + 1/1000000", "--vars", "x", "--trials", "3"],
    ["trisect", "--chord", "5"],
])
def test_schema_validation_across_cases(argv):
    _, rep, _ = call(*argv)
    jsonschema.validate(rep, schema(argv[0]))


# -- batch ------------------------------------------------------------------

def test_shipped_corpus_passes():
    code, rep, _ = call("batch", str(CORPUS))
    assert code == 0, [r for r in rep["records"] if r["verdict"] != "pass"]
    assert rep["summary"]["failed"] == 0 and rep["summary"]["total"] >= 10


def test_corpus_is_idempotent_and_order_stable():
    argv = ("--mode", "exact", "batch", str(CORPUS))
    first = io.StringIO()
    second = io.StringIO()
    third = io.StringIO()
    run(list(argv), stdout=first)
    run(list(argv), stdout=second)
    run([*argv, "--parallel", "3"], stdout=third)
    assert first.getvalue() == second.getvalue() == third.getvalue()


def test_empty_batch(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    code, rep, _ = call("batch", str(path))
    assert code == 0 and rep["summary"] == {"total": 0, "passed": 0, "failed": 0}


def test_batch_reports_deviations_and_parse_errors(tmp_path):
    path = tmp_path / "mixed.jsonl"
    records = [
        {"kind": "solve-cubic", "params": {"p": 15, "q": 4}, "expect": {"roots.0.re": 5}},
        {"kind": "solve-cubic", "params": {"p": 15, "q": 4}, "expect": {"roots.0.re": 4}},
        {"kind": "levitate", "params": {}},
        {"kind": "trisect", "params": {"chord": "x"}},
    ]
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n{not json\n")
    code, rep, _ = call("batch", str(path))
    verdicts = [r["verdict"] for r in rep["records"]]
    assert code == 1
    assert verdicts == ["fail", "pass", "parse-error", "parse-error", "parse-error"]
    (dev,) = rep["records"][0]["deviations"]
    assert dev["field"] == "roots.0.re" and dev["deviation"] == pytest.approx(1.0)
    assert rep["summary"] == {"total": 5, "passed": 1, "failed": 4}


def test_batch_expected_exit_code(tmp_path):
    path = tmp_path / "fail.jsonl"
    rec = {"kind": "trisect", "params": {"chord": 3}, "expect": {"exit_code": 1}}
    path.write_text(json.dumps(rec) + "\n")
    assert call("batch", str(path))[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fictio", "proportion", "--a", "1", "--b", "2",
                           "--c", "3", "--d", "6"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["formal"] is True


def test_batch_accepts_surd_shorthand(tmp_path):
    path = tmp_path / "surd.jsonl"
    roots = [{"re": 4, "im": 0}, {"re": "-2 + sqrt(3)", "im": 0}, {"re": "-2 - sqrt(3)", "im": 0}]
    rec = {"kind": "solve-cubic", "params": {"p": 15, "q": 4}, "expect": {"roots": roots}}
    path.write_text(json.dumps(rec) + "\n")
    assert call("batch", str(path))[0] == 0
