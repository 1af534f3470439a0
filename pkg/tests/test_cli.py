#!/usr/bin/env python3
"""
Test Command Line
Every subcommand end to end, writing to temporary files.
"""

import io
import json
import os
import sys
import tempfile
from pathlib import Path

import pandas as pd

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from cli import main


def _run(*argv):
    """Run the CLI with --out in a temporary directory; returns (exit code, output text)."""
    with tempfile.TemporaryDirectory() as directory:
        out = os.path.join(directory, "out.txt")
        code = main(list(argv) + ["--out", out])
        text = Path(out).read_text() if os.path.exists(out) else ""
    return code, text


def test_table_command():
    code, text = _run("table", "--n", "4", "--d", "2", "--role", "unitary")
    assert code == 0
    frame = pd.read_csv(io.StringIO(text))
    assert len(frame) == 3
    assert list(frame["d_lambda"]) == [5, 3, 1]

    code, text = _run("table", "--n", "4", "--d", "2", "--role", "permutation", "--format", "json")
    aggregates = json.loads(text)["aggregates"]
    assert (aggregates["d_R"], aggregates["d_tot"], aggregates["d_tot_sq"]) == ("3", "6", "14")

    code, text = _run("table", "--n", "1", "--d", "2")
    assert len(pd.read_csv(io.StringIO(text))) == 1


def test_costs_command():
    code, text = _run("costs", "--n", "100", "--d", "2")
    report = json.loads(text)
    assert code == 0
    assert report["small_delta_c"] == "1"
    assert report["naive_teleport"]["qubits"] == 200

    _, text = _run("costs", "--n", "100", "--d", "5")
    assert json.loads(text)["small_delta_c"] == "2"
    _, text = _run("costs", "--n", "1", "--d", "2")
    assert json.loads(text)["delta_c"] == "0"

    _, text = _run("costs", "--d", "2", "--range", "1:10", "--format", "csv")
    assert len(pd.read_csv(io.StringIO(text))) == 10

    _, text = _run("costs", "--n", "6", "--d", "2", "--diagnostics")
    assert json.loads(text)["direct"] == "20"


def test_figure_command():
    code, text = _run("figure", "--which", "fig4", "--d", "2", "--nmax", "100")
    frame = pd.read_csv(io.StringIO(text))
    assert code == 0 and len(frame) == 100
    assert frame["c_min"].is_monotonic_increasing

    _, text = _run("figure", "--which", "fig6", "--d", "2", "--nmax", "4")
    frame = pd.read_csv(io.StringIO(text))
    assert frame.loc[frame["n"] == 2, "p_tele"].iloc[0] == "1/16"

    _, text = _run("figure", "--which", "fig5", "--d", "4")
    fig5 = pd.read_csv(io.StringIO(text))
    assert list(fig5.loc[fig5["small_delta_c"] > 2, "n"]) == [52]


def test_simulate_command():
    code, text = _run("simulate", "--protocol", "repmatch", "--n", "1", "--d", "2", "--trials", "200")
    summary = json.loads(text)
    assert code == 0
    assert summary["statistics"]["rate"] == 1.0

    code, text = _run("simulate", "--protocol", "store-retrieve", "--n", "2", "--d", "2", "--trials", "300")
    assert code in (0, 1)
    assert json.loads(text)["exact_probability"] == "1/10"

    with tempfile.TemporaryDirectory() as directory:
        transcript = os.path.join(directory, "t.json")
        _run("simulate", "--n", "4", "--d", "2", "--trials", "50", "--emit", transcript)
        totals = json.loads(Path(transcript).read_text())["totals"]
    assert (totals["forward"], totals["backward"]) == (3, 4)


def test_simulate_rejections():
    code, _ = _run("simulate", "--protocol", "teleport", "--task", "permutation", "--n", "3", "--d", "2")
    assert code == 2
    code, _ = _run("simulate", "--n", "13", "--d", "2")
    assert code == 2
    code, _ = _run("simulate", "--n", "3", "--d", "2", "--task", "permutation", "--perm", "(0 0)")
    assert code == 2


def test_verify_command():
    code, text = _run("verify", "--what", "identities", "--n", "12", "--d", "4")
    assert code == 0 and json.loads(text)["passed"]

    code, text = _run("verify", "--what", "bounds", "--n", "20", "--d", "4")
    assert code == 0

    code, text = _run("verify", "--what", "rank", "--n", "2", "--d", "2")
    assert code == 0
    assert json.loads(text)["rank"]["measured"] == 10

    code, text = _run("verify", "--what", "schur", "--n", "3", "--d", "2")
    result = json.loads(text)
    assert code == 0
    assert result["su_block_residual"] < 1e-9


def test_bad_flags_exit_with_two():
    for argv in (["table", "--n", "x", "--d", "2"], ["figure", "--which", "fig9"], ["nonsense"]):
        try:
            main(argv)
        except SystemExit as e:
            assert e.code == 2
            continue
        raise AssertionError(f"{argv} accepted")


def main_tests():
    """Run all CLI tests."""
    print("\n🧪 CLI TESTS\n")
    tests = [
        test_table_command,
        test_costs_command,
        test_figure_command,
        test_simulate_command,
        test_simulate_rejections,
        test_verify_command,
        test_bad_flags_exit_with_two,
    ]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    print(f"\n{len(tests) - failed}/{len(tests)} passed\n")
    return failed


if __name__ == "__main__":
    sys.exit(main_tests())
