#!/usr/bin/env python3
"""
Test Cost Model
Exact cost reports, round amplification, bound checks and figure series.
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from costmodel import (
    Task,
    amplify_rounds,
    cost_grid,
    cost_report,
    figure_series,
    permutation_total_diagnostics,
    verify_bounds,
)


def test_cost_report_reference_numbers():
    report = cost_report(100, 2)
    assert (report.d_R, report.d_tot, report.d_tot_sq) == (101, 2601, 176851)
    assert (report.c_rm, report.c_min, report.small_delta_c) == (19, 18, 1)
    assert report.c_max == 24
    assert cost_report(100, 5).small_delta_c == 2


def test_cost_report_small_cases():
    single = cost_report(1, 2)
    assert single.num_irreps == 1
    assert single.p_rm == 1
    assert single.delta_c == 0
    assert single.c_rm == single.c_max == 2

    report = cost_report(4, 2, "unitary-array")
    assert (report.c_max, report.c_rm, report.c_min) == (8, 7, 6)
    assert (report.delta_c, report.small_delta_c) == (1, 1)
    assert (report.forward_qubits, report.backward_qubits) == (3, 4)
    assert report.p_rm == Fraction(1, 3)
    assert report.p_tele == Fraction(1, 81)
    assert report.probability_ratio == 27
    assert report.c_naive == 8
    assert report.p_naive == Fraction(1, 256)
    assert report.average_cost == 21

    as_dict = report.to_dict()
    assert as_dict["p_tele"] == "1/81"
    assert as_dict["p_rm_decimal"] == "0.333333333333"
    assert as_dict["c_rs"] is None


def test_permutation_costs():
    report = cost_report(4, 2, Task.PERMUTATION)
    assert (report.d_R, report.d_tot, report.d_tot_sq) == (3, 6, 14)
    assert report.c_rm == 2 + 3
    assert report.c_min == 4

    diagnostics = permutation_total_diagnostics(4)
    assert diagnostics["direct"] == "6"
    assert diagnostics["half_matches"] == "True"


def test_invalid_arguments():
    for args in [(0, 2), (3, 1)]:
        try:
            cost_report(*args)
        except ValueError:
            continue
        raise AssertionError(f"cost_report{args} accepted")
    try:
        cost_report(3, 2, "teleport-everything")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown task accepted")


def test_small_overhead_for_qubits():
    """The gap to the lower bound never exceeds two qubits for d = 2."""
    for n in range(1, 1001):
        assert cost_report(n, 2).small_delta_c <= 2, n


def test_storage_retrieval_matches_lower_bound():
    for d in (2, 3):
        for n in range(1, 31):
            report = cost_report(n, d, "storage-retrieval")
            assert report.c_rs == report.c_min
            assert report.p_rs == Fraction(1, report.d_tot_sq)
    assert cost_report(1, 2, "storage-retrieval").p_rs == Fraction(1, 4)
    assert cost_report(2, 2, "storage-retrieval").c_rs == 4


def test_amplify_rounds_examples():
    assert amplify_rounds(Fraction(1, 2), 0.01) == 7
    assert amplify_rounds(1, 0.3) == 1
    assert amplify_rounds(Fraction(1, 3), 0.05) == 8
    for bad in [0, 1, 1.5]:
        try:
            amplify_rounds(Fraction(1, 2), bad)
        except ValueError:
            continue
        raise AssertionError(f"eps={bad} accepted")


def test_bounds_hold():
    assert verify_bounds(4, 2).num_irreps_bound
    tight = verify_bounds(1, 2)
    assert tight.max_dimension_bound
    assert tight.all_hold
    for d in range(2, 6):
        for n in range(1, 41):
            report = verify_bounds(n, d)
            assert report.all_hold, report.to_dict()


def test_average_cost_property():
    """c_rm * |R| >= c_max whenever there are at least two blocks."""
    limits = {2: 200, 3: 120, 4: 40, 5: 30}
    for d, n_max in limits.items():
        for n in range(2, n_max + 1):
            report = cost_report(n, d)
            assert report.num_irreps >= 2
            assert report.average_cost >= report.c_max, (n, d)


def test_figure_series():
    fig4 = figure_series("fig4", d=2)
    assert len(fig4) == 100
    row = fig4[fig4["n"] == 100].iloc[0]
    assert (row["c_rm"], row["c_min"], row["c_max"]) == (19, 18, 24)
    assert fig4["c_min"].is_monotonic_increasing

    fig6 = figure_series("fig6", d=2, n_range=range(1, 5))
    row = fig6[fig6["n"] == 2].iloc[0]
    assert (row["p_rm"], row["p_tele"]) == ("1/2", "1/16")

    fig5 = figure_series("fig5")
    assert list(fig5["n"]) == list(range(2, 61, 2))
    above_two = fig5[fig5["small_delta_c"] > 2]
    assert list(above_two["n"]) == [52]
    assert above_two.iloc[0]["small_delta_c"] == 3

    try:
        figure_series("fig7")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown figure accepted")


def test_permutation_overhead_exception_at_52():
    """d = 4 permutation overhead reaches three qubits at n = 52 and nowhere else in [2, 60]."""
    report = cost_report(52, 4, Task.PERMUTATION)
    assert report.d_R == 19690554018853001573289000
    assert report.d_tot == 1277147280034703583103520608
    assert (report.c_rm, report.c_min, report.small_delta_c) == (176, 173, 3)
    for n in range(2, 61, 2):
        if n != 52:
            assert cost_report(n, 4, Task.PERMUTATION).small_delta_c <= 2, n


def test_permutation_saving_grows():
    """Delta c >= log2(n) / 2 - 4 for the permutation task, d = 2, even n in [64, 1024]."""
    for n in range(64, 1025, 2):
        report = cost_report(n, 2, Task.PERMUTATION)
        assert report.delta_c >= 0.5 * math.log2(n) - 4, (n, report.delta_c)


def test_probability_ratio_nondecreasing():
    ratios = [cost_report(n, 2).probability_ratio for n in range(1, 201)]
    assert all(later >= earlier for earlier, later in zip(ratios, ratios[1:]))


def test_overhead_nonnegative_for_every_task():
    """small delta c >= 0; the full n <= 200 range for d <= 3, shorter ranges above."""
    limits = {2: 200, 3: 200, 4: 60, 5: 40}
    for d, n_max in limits.items():
        for n in range(1, n_max + 1):
            for task in Task:
                report = cost_report(n, d, task)
                assert report.small_delta_c >= 0, (n, d, task.value)
                assert report.c_rm >= report.c_min


def test_cost_grid():
    frame = cost_grid(range(1, 5), [2, 3], "unitary-array")
    assert len(frame) == 8
    assert set(frame["d"]) == {2, 3}


def main():
    """Run all cost-model tests."""
    print("\n🧪 COST MODEL TESTS\n")
    tests = [
        test_cost_report_reference_numbers,
        test_cost_report_small_cases,
        test_permutation_costs,
        test_invalid_arguments,
        test_small_overhead_for_qubits,
        test_storage_retrieval_matches_lower_bound,
        test_amplify_rounds_examples,
        test_bounds_hold,
        test_average_cost_property,
        test_figure_series,
        test_permutation_overhead_exception_at_52,
        test_permutation_saving_grows,
        test_probability_ratio_nondecreasing,
        test_overhead_nonnegative_for_every_task,
        test_cost_grid,
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
