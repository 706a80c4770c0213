import io
import json

import pandas as pd
import pytest

from app import main
from utils.benchmarks import BENCH_COLUMNS

WORKED = "(\\ (\\ \\ #1 #2 #3) b) c"
PEAK_LEFT = "[[X, 1, 0, (a, 0) :: nil], 1, 0, (b, 0) :: nil]"
PEAK_RIGHT = "[[X, 2, 1, (#1, 1) :: (b, 0) :: nil], 1, 0, ([a, 1, 0, (b, 0) :: nil], 0) :: nil]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_command(capsys):
    code, _, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_help(capsys):
    assert run(capsys, "--help")[0] == 0


# --- CHECK ---
def test_check_well_formed(capsys):
    assert run(capsys, "check", "[#1, 1, 0, (c, 0) :: nil]")[:2] == (0, "well-formed\n")


def test_check_ill_formed(capsys):
    code, out, _ = run(capsys, "check", "[#1, 2, 0, (c, 0) :: nil]")
    assert code == 1
    assert out.startswith("ill-formed\n  at root: suspension: len(env) = ol")


def test_parse_error_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "[#1, 1")
    assert code == 2
    assert "Error:" in err


def test_expression_from_file(capsys, tmp_path):
    source = tmp_path / "term.txt"
    source.write_text("\\ #1\n", encoding="utf-8")
    assert run(capsys, "check", str(source))[0] == 0


def test_expression_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[c, 0, 0, nil]"))
    assert run(capsys, "check", "-")[:2] == (0, "well-formed\n")


# --- REWRITING ---
def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", WORKED, "--rules", "rmbeta", "--fuel", "1000")
    assert (code, out) == (0, "\\ #1 b c\n")


def test_normalize_defaults_to_rm(capsys):
    assert run(capsys, "normalize", "[\\ #2, 1, 0, (c, 0) :: nil]")[:2] == (0, "\\ c\n")


def test_beta_rules_need_fuel(capsys):
    code, _, err = run(capsys, "normalize", WORKED, "--rules", "rmbeta")
    assert code == 2
    assert "explicit fuel" in err


def test_fuel_exhaustion(capsys):
    code, _, err = run(capsys, "normalize", "(\\ #1 #1) (\\ #1 #1)", "--rules", "rmbeta", "--fuel", "20")
    assert code == 1
    assert "fuel exhausted after 20 steps" in err


def test_beta_oracle(capsys):
    assert run(capsys, "normalize", WORKED, "--rules", "beta", "--fuel", "10")[:2] == (0, "\\ #1 b c\n")


def test_other_calculi(capsys):
    assert run(capsys, "normalize", "(\\1) c", "--calc", "lsig", "--fuel", "10")[:2] == (0, "c\n")
    assert run(capsys, "normalize", "(\\1_) 2_", "--calc", "lu", "--fuel", "10")[:2] == (0, "2_\n")
    assert run(capsys, "normalize", "(\\1) 2", "--calc", "ls", "--rules", "lse", "--fuel", "10")[:2] == (0, "2\n")


def test_bad_strategy(capsys):
    assert run(capsys, "normalize", "c", "--strategy", "sideways")[0] == 2


def test_trace_and_replay(capsys, tmp_path):
    trace_file = tmp_path / "trace.json"
    code, _, _ = run(capsys, "normalize", WORKED, "--rules", "rmbeta", "--fuel", "1000", "--trace", str(trace_file))
    assert code == 0
    data = json.loads(trace_file.read_text(encoding="utf-8"))
    assert data["status"] == "normal_form"
    code, out, _ = run(capsys, "replay", str(trace_file))
    assert (code, out) == (0, f"replayed {len(data['steps'])} steps\n")


def test_replay_rejects_tampered_trace(capsys, tmp_path):
    trace_file = tmp_path / "trace.json"
    run(capsys, "normalize", WORKED, "--rules", "rmbeta", "--fuel", "1000", "--trace", str(trace_file))
    data = json.loads(trace_file.read_text(encoding="utf-8"))
    data["steps"][0]["result"] = "c"
    trace_file.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = run(capsys, "replay", str(trace_file))
    assert code == 1
    assert out.startswith("replay failed")


def test_step(capsys):
    assert run(capsys, "step", "(\\ #1) c", "--rule", "beta_s")[:2] == (0, "[#1, 1, 0, (c, 0) :: nil]\n")
    assert run(capsys, "step", "\\ [c, 0, 0, nil]", "--at", "0", "--rule", "r1")[:2] == (0, "\\ c\n")


def test_step_that_does_not_apply(capsys):
    assert run(capsys, "step", "\\ [c, 0, 0, nil]", "--rule", "r1")[0] == 2
    assert run(capsys, "step", "c", "--rule", "r99")[0] == 2


# --- TRANSLATION ---
@pytest.mark.parametrize(
    "source, target, text, expected",
    [
        ("lu", "susp", "1_[shift]", "[#1, 0, 1, nil]"),
        ("lu", "susp", "lift(shift)", "(1, 2, (#1, 2) :: nil)"),
        ("susp", "lsig", "#3", "1[^2]"),
        ("lsig", "susp", "1[^ o ^]", "#3"),
        ("lsig", "susp", "c . id", "(1, 0, (c, 0) :: nil)"),
        ("ls", "susp", "phi(0, 3, 1)", "[#1, 0, 2, nil]"),
    ],
)
def test_translate(capsys, source, target, text, expected):
    code, out, _ = run(capsys, "translate", text, "--from", source, "--to", target)
    assert (code, out) == (0, expected + "\n")


def test_translate_environment_at_level(capsys):
    code, out, _ = run(capsys, "translate", "(c, 0) :: nil", "--from", "susp", "--to", "lsig", "--level", "1")
    assert (code, out) == (0, "(c . id) o ^\n")


def test_unsupported_translation(capsys):
    code, _, err = run(capsys, "translate", "1", "--from", "ls", "--to", "lsig")
    assert code == 2
    assert "supported" in err


# --- MEASURES ---
def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "[c, 0, 0, nil]", "--eta-bound", "1")
    assert code == 0
    assert out == "mu: 1\neta_0: 2\neta_1: 2\nessence: s2(*, *)\n"


def test_check_decrease(capsys):
    code, out, _ = run(capsys, "check-decrease", "[c, 0, 0, nil]", "c")
    assert code == 0
    assert "essence_decreases: yes" in out
    assert run(capsys, "check-decrease", "c", "[c, 0, 0, nil]")[0] == 1


# --- JOINABILITY ---
def test_join_metavar_peak(capsys):
    code, out, _ = run(capsys, "join", PEAK_LEFT, PEAK_RIGHT)
    assert code == 0
    assert out.startswith("joinable at ")
    assert run(capsys, "join", PEAK_LEFT, PEAK_RIGHT, "--rules", "r")[:2] == (1, "not joinable\n")


# --- FUZZING AND BENCHMARKS ---
def test_fuzz_writes_report(capsys, tmp_path):
    report = tmp_path / "pruning.csv"
    code, out, _ = run(
        capsys, "fuzz", "--suite", "pruning", "--cases", "3", "--max-size", "10", "--workers", "1", "--report", str(report)
    )
    assert code == 0
    assert "pruning" in out
    frame = pd.read_csv(report)
    assert list(frame["case"]) == [0, 1, 2]
    assert frame["passed"].all()


def test_fuzz_unknown_suite(capsys):
    assert run(capsys, "fuzz", "--suite", "nonsense")[0] == 2


def test_bench_to_stdout(capsys):
    code, out, _ = run(capsys, "bench", "--corpus", "deep-redex", "--fuel", "200")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(BENCH_COLUMNS)
    assert len(lines) == 1 + 12 * 11


def test_bench_xlsx_needs_out(capsys):
    code, _, err = run(capsys, "bench", "--corpus", "church", "--report", "xlsx")
    assert code == 2
    assert "--out" in err
