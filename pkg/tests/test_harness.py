#!/usr/bin/env python3
"""
Test Harness
Message metering, transcripts, the gate oracle and full sessions.
"""

import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from costmodel import cost_report
from harness import A_TO_B, B_TO_A, GateOracle, Message, Transcript
from harness.session import SessionConfig, execute_session, simulate
from repmatch import random_state
from schur import SchurBasisCache, haar_su, random_permutation

_cache = SchurBasisCache(persist=False)


def test_message_metering():
    assert Message(A_TO_B, "R", 5).qubits == 3
    assert Message(B_TO_A, "AR-memory", 9).qubits == 4
    assert Message(A_TO_B, "R", 1).qubits == 0
    for args in [("sideways", "R", 2), (A_TO_B, "R", 0)]:
        try:
            Message(*args)
        except ValueError:
            continue
        raise AssertionError(f"Message{args} accepted")


def test_transcript_totals_and_json():
    transcript = Transcript(protocol="repmatch")
    transcript.start_round()
    transcript.send(A_TO_B, "R", 5)
    transcript.send(B_TO_A, "AR-memory", 9)
    transcript.record(sampled_branch=1)
    transcript.start_round()
    transcript.send(A_TO_B, "R", 5)
    assert transcript.totals() == {"forward": 6, "backward": 4, "total": 10, "rounds": 2}
    assert transcript.messages[-1].round == 2

    with tempfile.TemporaryDirectory() as directory:
        path = os.path.join(directory, "nested", "transcript.json")
        transcript.save(path)
        payload = json.loads(Path(path).read_text())
    assert payload["schema_version"] == "1.0"
    assert payload["messages"][0] == {"leg": "A->B", "register": "R", "dimension": "5", "qubits": 3, "round": 1}
    assert payload["rounds"][0]["sampled_branch"] == 1


def test_gate_oracle_counts_uses():
    rng = np.random.default_rng(0)
    g = haar_su(2, rng)
    oracle = GateOracle("unitary-array", g, 3, 2)
    oracle.apply(np.eye(8))
    oracle.apply(np.eye(8))
    assert oracle.queries == 6
    oracle.reset()
    assert oracle.queries == 0

    conj = GateOracle("conjugation", haar_su(3, rng), 2, 3)
    assert conj.uses_per_call == 4

    perm = GateOracle("permutation", (1, 0), 2, 2)
    assert np.allclose(perm.apply(np.array([0, 1, 0, 0])), [0, 0, 1, 0])
    try:
        GateOracle("unitary-array", np.eye(3), 2, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("wrong gate shape accepted")


def test_repmatch_session_totals():
    rng = np.random.default_rng(1)
    oracle = GateOracle("unitary-array", haar_su(2, rng), 4, 2)
    result = execute_session("repmatch", random_state(16, rng), oracle, SessionConfig(seed=3), cache=_cache)
    totals = result.transcript.totals()
    assert (totals["forward"], totals["backward"]) == (3, 4)
    assert totals["total"] == cost_report(4, 2).c_rm == 7
    assert totals["rounds"] == 1
    assert result.probability == Fraction(1, 3)


def test_repmatch_totals_match_cost_for_every_task():
    rng = np.random.default_rng(6)
    for n in range(1, 11):
        for task in ("unitary-array", "permutation", "conjugation"):
            element = random_permutation(n, rng) if task == "permutation" else haar_su(2, rng)
            oracle = GateOracle(task, element, n, 2)
            result = execute_session("repmatch", random_state(2 ** n, rng), oracle, SessionConfig(seed=n), cache=_cache)
            totals = result.transcript.totals()
            assert totals["total"] == cost_report(n, 2, task).c_rm, (n, task)
            assert totals["rounds"] == 1
            assert result.oracle_queries == n


def test_repmatch_single_block_session():
    rng = np.random.default_rng(2)
    oracle = GateOracle("unitary-array", haar_su(2, rng), 1, 2)
    result = execute_session("repmatch", random_state(2, rng), oracle, cache=_cache)
    assert result.succeeded
    assert result.oracle_queries == 1
    assert result.transcript.rounds == 1
    assert result.fidelity >= 1 - 1e-9


def test_teleport_session():
    rng = np.random.default_rng(3)
    oracle = GateOracle("unitary-array", haar_su(2, rng), 2, 2)
    result = execute_session("teleport", random_state(4, rng), oracle, cache=_cache)
    assert result.transcript.totals()["forward"] == 0
    assert result.transcript.totals()["backward"] == 4
    assert result.probability == Fraction(1, 16)


def test_store_retrieve_session():
    rng = np.random.default_rng(4)
    oracle = GateOracle("unitary-array", haar_su(2, rng), 2, 2)
    with tempfile.TemporaryDirectory() as directory:
        path = os.path.join(directory, "session.json")
        result = execute_session(
            "store-retrieve", random_state(4, rng), oracle, SessionConfig(emit=path), cache=_cache
        )
        payload = json.loads(Path(path).read_text())
    assert result.probability == Fraction(1, 10)
    assert result.fidelity >= 1 - 1e-9
    assert payload["protocol"] == "store-retrieve"
    assert payload["totals"]["backward"] == 4


def test_session_errors():
    rng = np.random.default_rng(5)
    oracle = GateOracle("permutation", (1, 0, 2), 3, 2)
    for protocol in ("teleport", "quantum-mail"):
        try:
            execute_session(protocol, random_state(8, rng), oracle, cache=_cache)
        except ValueError:
            continue
        raise AssertionError(f"{protocol} accepted")


def test_simulate_summaries():
    summary = simulate("store-retrieve", "unitary-array", 2, 2, trials=500, cache=_cache)
    assert summary["exact_probability"] == "1/10"
    assert summary["statistics"]["trials"] == 500

    summary = simulate("repmatch", "unitary-array", 1, 2, trials=100, cache=_cache)
    assert summary["statistics"]["rate"] == 1.0
    assert summary["statistics"]["within_3_sigma"]

    summary = simulate("repmatch", "permutation", 3, 2, trials=200, perm="(0 1 2)", cache=_cache)
    assert summary["p_rm"] == "1/2"
    assert summary["session"]["transcript"]["totals"]["rounds"] == 1


def main():
    """Run all harness tests."""
    print("\n🧪 HARNESS TESTS\n")
    tests = [
        test_message_metering,
        test_transcript_totals_and_json,
        test_gate_oracle_counts_uses,
        test_repmatch_session_totals,
        test_repmatch_totals_match_cost_for_every_task,
        test_repmatch_single_block_session,
        test_teleport_session,
        test_store_retrieve_session,
        test_session_errors,
        test_simulate_summaries,
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
    sys.exit(main())
