#!/usr/bin/env python3
"""
Test Schur Module
Tensor-factor permutations, Schur basis construction and verification,
irrep matrices, conjugation intertwiners and the on-disk cache.
"""

import itertools
import os
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from repcore import YoungDiagram
from schur import (
    SchurBasisCache,
    apply_tensor_power,
    build_schur_basis,
    compose,
    conjugation_intertwiner,
    haar_su,
    is_special_unitary,
    isotypic_projector,
    kernel_basis,
    load_basis,
    parse_cycles,
    permutation_operator,
    permute_tensor_factors,
    read_array,
    save_basis,
    su_irrep_matrices,
    su_irrep_matrix,
    sym_irrep_matrix,
    tensor_power,
    verify_basis,
    write_array,
)
from utils import BasisConstructionError, DimensionCapError


def _raises(error, func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except error:
        return True
    raise AssertionError(f"{func.__name__}{args} did not raise {error.__name__}")


def test_permutation_operator_examples():
    assert np.array_equal(permutation_operator((0, 1, 2), 3, 2).toarray(), np.eye(8))
    swap = permutation_operator((1, 0), 2, 2).toarray()
    ket_01 = np.array([0, 1, 0, 0])
    assert np.array_equal(swap @ ket_01, np.array([0, 0, 1, 0]))


def test_permutation_operator_is_a_homomorphism():
    n, d = 3, 2
    for first in itertools.permutations(range(n)):
        for second in itertools.permutations(range(n)):
            product = permutation_operator(first, n, d) @ permutation_operator(second, n, d)
            expected = permutation_operator(compose(first, second), n, d)
            assert np.array_equal(product.toarray(), expected.toarray())


def test_permute_tensor_factors_matches_operator():
    rng = np.random.default_rng(7)
    n, d = 3, 3
    vectors = rng.standard_normal((d ** n, 4))
    for perm in itertools.permutations(range(n)):
        expected = permutation_operator(perm, n, d) @ vectors
        assert np.allclose(permute_tensor_factors(perm, vectors, n, d), expected)


def test_apply_tensor_power_matches_kron():
    rng = np.random.default_rng(3)
    g = haar_su(2, rng)
    assert is_special_unitary(g)
    vectors = rng.standard_normal((8, 3)) + 1j * rng.standard_normal((8, 3))
    assert np.allclose(apply_tensor_power(g, vectors, 3, 2), tensor_power(g, 3) @ vectors)
    single = vectors[:, 0]
    assert apply_tensor_power(g, single, 3, 2).shape == (8,)


def test_parse_cycles():
    assert parse_cycles("(0 1 2)", 3) == (1, 2, 0)
    assert parse_cycles("(0 1)(2 3)", 4) == (1, 0, 3, 2)
    assert parse_cycles("(0,2)", 3) == (2, 1, 0)
    assert parse_cycles("", 3) == (0, 1, 2)
    _raises(ValueError, parse_cycles, "0 1", 3)
    _raises(ValueError, parse_cycles, "(0 1)(1 2)", 3)
    _raises(ValueError, parse_cycles, "(0 5)", 3)


def test_basis_layout_and_verification():
    basis = build_schur_basis(3, 2)
    assert np.allclose(basis.matrix.T @ basis.matrix, np.eye(8), atol=1e-10)
    assert basis.block(YoungDiagram((2, 1))).shape == (8, 2, 2)
    report = verify_basis(basis, samples=20)
    assert report.passed, report.to_dict()
    assert report.su_block_residual < 1e-9

    four = build_schur_basis(4, 2)
    assert four.block_offsets == [0, 5, 14]
    assert four.column_index(YoungDiagram((3, 1)), 0, 0) == 5
    assert four.column_index(YoungDiagram((3, 1)), 1, 2) == 5 + 1 * 3 + 2


def test_larger_bases_verify():
    for n, d in [(6, 2), (8, 2), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)]:
        report = verify_basis(build_schur_basis(n, d), samples=20)
        assert report.passed, report.to_dict()


@pytest.mark.slow
def test_cap_sized_bases_verify():
    """Largest bases under the default cap; several minutes each."""
    for n, d in [(12, 2), (7, 3), (6, 4), (5, 5)]:
        report = verify_basis(build_schur_basis(n, d), samples=20)
        assert report.passed, report.to_dict()


def test_kernel_basis_absolute_cutoff():
    noise = np.array([[-9.1e-17j], [4.2e-17j], [-3.9e-16j]])
    assert kernel_basis(noise, 1e-8).shape == (1, 1)

    rank_one = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0]])
    kernel = kernel_basis(rank_one, 1e-8)
    assert kernel.shape == (3, 2)
    assert np.allclose(rank_one @ kernel, 0, atol=1e-12)

    assert np.allclose(kernel_basis(np.zeros((0, 2)), 1e-8), np.eye(2))


def test_singlet_block():
    basis = build_schur_basis(2, 2)
    column = basis.block(YoungDiagram((1, 1)))[:, 0, 0]
    assert np.allclose(column, np.array([0, 1, -1, 0]) / np.sqrt(2))


def test_su_irrep_examples():
    basis = build_schur_basis(2, 2)
    rng = np.random.default_rng(11)
    g = haar_su(2, rng)
    assert np.allclose(su_irrep_matrix(basis, YoungDiagram((1, 1)), g), [[1.0]])

    theta = 0.37
    diagonal = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
    spin_one = su_irrep_matrix(basis, YoungDiagram((2,)), diagonal, check_alpha=True)
    assert np.allclose(spin_one, np.diag([np.exp(2j * theta), 1.0, np.exp(-2j * theta)]))

    # the batched form agrees with the per-block one
    for entry, matrix in zip(basis.table.entries, su_irrep_matrices(basis, g)):
        assert np.allclose(matrix, su_irrep_matrix(basis, entry.diagram, g))


def test_sym_irrep_examples():
    basis = build_schur_basis(2, 2)
    assert np.allclose(sym_irrep_matrix(basis, YoungDiagram((2,)), (1, 0)), [[1.0]])
    assert np.allclose(sym_irrep_matrix(basis, YoungDiagram((1, 1)), (1, 0)), [[-1.0]])


def test_isotypic_projector():
    projector = isotypic_projector(3, 2, YoungDiagram((2, 1)))
    assert np.allclose(projector @ projector, projector)
    assert round(np.trace(projector)) == 4


def test_conjugation_intertwiner_qubit():
    basis = build_schur_basis(1, 2)
    v = conjugation_intertwiner(YoungDiagram((1,)), basis, basis)
    assert np.allclose(v, np.array([[0, 1], [-1, 0]]), atol=1e-8)

    pair = build_schur_basis(2, 2)
    scalar = conjugation_intertwiner(YoungDiagram((1, 1)), pair, pair)
    assert scalar.shape == (1, 1)
    assert abs(abs(scalar[0, 0]) - 1) < 1e-10


def test_conjugation_intertwiner_qutrit():
    basis = build_schur_basis(1, 3)
    conj_basis = build_schur_basis(2, 3)
    diagram = YoungDiagram((1,))
    v = conjugation_intertwiner(diagram, basis, conj_basis)
    partner = YoungDiagram((1, 1))
    rng = np.random.default_rng(5)
    for _ in range(3):
        g = haar_su(3, rng)
        left = su_irrep_matrix(basis, diagram, g).conj()
        right = v @ su_irrep_matrix(conj_basis, partner, g) @ v.conj().T
        assert np.allclose(left, right, atol=1e-9)


def test_cache_roundtrip():
    with tempfile.TemporaryDirectory() as directory:
        cache = SchurBasisCache(directory=directory)
        basis = cache.get(3, 2)
        path = cache.path_for(3, 2)
        assert path.exists()
        assert cache.get(3, 2) is basis

        fresh = SchurBasisCache(directory=directory)
        loaded = fresh.get(3, 2)
        assert np.allclose(loaded.matrix, basis.matrix)
        assert loaded.column_map() == basis.column_map()

        other = os.path.join(directory, "copy.bin")
        save_basis(basis, other)
        assert np.allclose(load_basis(other).matrix, basis.matrix)


def test_cache_file_errors():
    with tempfile.TemporaryDirectory() as directory:
        bogus = Path(directory) / "bogus.bin"
        bogus.write_bytes(b"XXXX0000")
        _raises(ValueError, read_array, bogus)

        stale = Path(directory) / "stale.bin"
        write_array(stale, {"n": 1, "d": 2, "convention_version": 99, "columns": []}, np.eye(2))
        _raises(BasisConstructionError, load_basis, stale)

        header, data = read_array(stale)
        assert header["shape"] == [2, 2]
        assert np.allclose(data, np.eye(2))


def test_dimension_cap():
    _raises(DimensionCapError, build_schur_basis, 13, 2)
    _raises(DimensionCapError, permutation_operator, tuple(range(13)), 13, 2)
    _raises(DimensionCapError, SchurBasisCache(persist=False).get, 6, 5)


def main():
    """Run all Schur tests."""
    print("\n🧪 SCHUR MODULE TESTS\n")
    tests = [
        test_permutation_operator_examples,
        test_permutation_operator_is_a_homomorphism,
        test_permute_tensor_factors_matches_operator,
        test_apply_tensor_power_matches_kron,
        test_parse_cycles,
        test_basis_layout_and_verification,
        test_larger_bases_verify,
        test_kernel_basis_absolute_cutoff,
        test_singlet_block,
        test_su_irrep_examples,
        test_sym_irrep_examples,
        test_isotypic_projector,
        test_conjugation_intertwiner_qubit,
        test_conjugation_intertwiner_qutrit,
        test_cache_roundtrip,
        test_cache_file_errors,
        test_dimension_cap,
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
