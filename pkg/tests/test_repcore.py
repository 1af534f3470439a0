#!/usr/bin/env python3
"""
Test Representation Core
Young diagrams, SU(d) / S(n) dimensions, characters and irrep tables.
"""

import math
import sys
from functools import lru_cache
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from repcore import (
    CycleType,
    YoungDiagram,
    associated_diagram,
    build_table,
    class_size,
    enumerate_cycle_types,
    enumerate_diagrams,
    mn_character,
    su_dimension,
    sym_dimension,
)


@lru_cache(maxsize=None)
def _standard_tableaux(rows):
    """Count standard Young tableaux by removing the largest entry from a corner."""
    if sum(rows) == 0:
        return 1
    total = 0
    for i, row in enumerate(rows):
        below = rows[i + 1] if i + 1 < len(rows) else 0
        if row > below:
            shrunk = list(rows)
            shrunk[i] -= 1
            total += _standard_tableaux(tuple(shrunk))
    return total


def _rows(diagram):
    return tuple(r for r in diagram.rows)


def test_enumerate_diagrams_examples():
    """Canonical order is descending lexicographic."""
    assert [d.padded(3) for d in enumerate_diagrams(1, 3)] == [(1, 0, 0)]
    assert [d.padded(2) for d in enumerate_diagrams(2, 2)] == [(2, 0), (1, 1)]
    four = enumerate_diagrams(4, 2)
    assert [d.padded(2) for d in four] == [(4, 0), (3, 1), (2, 2)]
    assert len(enumerate_diagrams(0, 2)) == 1


def test_young_diagram_validation():
    assert YoungDiagram((3, 1, 0, 0)) == YoungDiagram((3, 1))
    assert YoungDiagram((3, 1)).conjugate() == YoungDiagram((2, 1, 1))
    for bad in [(1, 2), (2, -1)]:
        try:
            YoungDiagram(bad)
        except ValueError:
            continue
        raise AssertionError(f"{bad} accepted")
    assert YoungDiagram.from_json(YoungDiagram((2, 1)).to_json(3)) == YoungDiagram((2, 1))


def test_su_dimension_examples():
    assert su_dimension(YoungDiagram((1,)), 2) == 2
    assert su_dimension(YoungDiagram((2,)), 2) == 3
    assert su_dimension(YoungDiagram((1, 1)), 3) == 3
    assert su_dimension(YoungDiagram(()), 4) == 1


def test_sym_dimension_examples():
    for n in range(1, 8):
        assert sym_dimension(YoungDiagram((n,)), n, 3) == 1
    assert sym_dimension(YoungDiagram((2, 1)), 3, 2) == 2
    assert sym_dimension(YoungDiagram((2, 2)), 4, 2) == 2


def test_sym_dimension_matches_tableaux_count():
    for n in range(1, 11):
        for d in range(1, 5):
            for diagram in enumerate_diagrams(n, d):
                assert sym_dimension(diagram, n, d) == _standard_tableaux(_rows(diagram)), (n, d, diagram)


def test_table_aggregates():
    table = build_table(2, 2)
    assert (table.d_R, table.d_tot, table.d_tot_sq) == (3, 4, 10)

    table = build_table(4, 2, "unitary")
    assert table.size == 3
    assert (table.d_R, table.d_tot, table.d_tot_sq) == (5, 9, 35)
    assert table.offsets == [0, 5, 8]

    perm = build_table(4, 2, "permutation")
    assert [e.m_lambda for e in perm.entries] == [1, 3, 2]
    assert (perm.d_R, perm.d_tot, perm.d_tot_sq) == (3, 6, 14)
    assert perm.aggregates()["d_tot_sq"] == "14"

    assert len(build_table(1, 2).to_dataframe()) == 1
    assert list(table.to_dataframe().columns) == ["lambda", "d_lambda", "m_lambda"]


def test_dimension_identities():
    """Sum of d_lambda^2 and of d_lambda m_lambda over the grid n <= 30, d <= 5."""
    for d in range(1, 6):
        for n in range(1, 31):
            table = build_table(n, d)
            assert table.d_tot_sq == math.comb(n + d * d - 1, n), (n, d)
            assert sum(e.d_lambda * e.m_lambda for e in table.entries) == d ** n, (n, d)


def test_associated_diagram_examples():
    assert associated_diagram(YoungDiagram((1, 1)), 2) == YoungDiagram(())
    assert associated_diagram(YoungDiagram((1,)), 3) == YoungDiagram((1, 1))
    for d in range(2, 5):
        for n in range(1, 5):
            result = associated_diagram(YoungDiagram((n,)), d)
            assert result.padded(d) == (n,) * (d - 1) + (0,)
            assert result.boxes == (d - 1) * n
    # SU(2) irreps are self-conjugate once padded back to n boxes
    for diagram in enumerate_diagrams(5, 2):
        assert associated_diagram(diagram, 2, pad_to=5) == diagram


def test_character_examples():
    assert mn_character(YoungDiagram((4,)), CycleType((2, 1, 1))) == 1
    assert mn_character(YoungDiagram((1, 1)), CycleType((2,))) == -1
    assert mn_character(YoungDiagram((2, 1)), CycleType((1, 1, 1))) == 2
    assert CycleType.from_permutation((1, 0, 2)) == CycleType((2, 1))


def test_character_orthogonality():
    """Column and row orthogonality of the S(n) character table."""
    for n in range(1, 7):
        diagrams = enumerate_diagrams(n, n)
        classes = enumerate_cycle_types(n)
        assert sum(class_size(mu) for mu in classes) == math.factorial(n)
        for first in diagrams:
            for second in diagrams:
                inner = sum(
                    class_size(mu) * mn_character(first, mu) * mn_character(second, mu) for mu in classes
                )
                assert inner == (math.factorial(n) if first == second else 0)
        identity = CycleType((1,) * n)
        for diagram in diagrams:
            assert mn_character(diagram, identity) == sym_dimension(diagram, n, n)


def main():
    """Run all representation-core tests."""
    print("\n🧪 REPRESENTATION CORE TESTS\n")
    tests = [
        test_enumerate_diagrams_examples,
        test_young_diagram_validation,
        test_su_dimension_examples,
        test_sym_dimension_examples,
        test_sym_dimension_matches_tableaux_count,
        test_table_aggregates,
        test_dimension_identities,
        test_associated_diagram_examples,
        test_character_examples,
        test_character_orthogonality,
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
