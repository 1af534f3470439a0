"""
Schur Basis
Numerical Schur transform of (C^d)^{(x)n}: an orthogonal change of basis in
which U^{(x)n} acts as U^lambda (x) I and permutations act as I (x) V^lambda.
"""

import itertools
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional

import numpy as np
from scipy import sparse
from scipy.linalg import svd

from repcore import CycleType, IrrepTable, YoungDiagram, build_table, mn_character
from utils import BasisConstructionError, get_logger, get_settings, log_event
from utils.config import LabSettings, check_dimension_cap
from .group_elements import apply_tensor_power, permute_tensor_factors, permutation_operator

logger = get_logger("Schur")

CONVENTION_VERSION = 2


@dataclass(frozen=True, eq=False)
class SchurBasis:
    """
    Real orthogonal d^n x d^n matrix whose columns are the Schur basis.

    Column offset_lambda + q * m_lambda + alpha holds basis vector
    (lambda, q, alpha), blocks in canonical diagram order.
    """
    n: int
    d: int
    table: IrrepTable
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.d ** self.n

    @property
    def block_offsets(self) -> List[int]:
        offsets, running = [], 0
        for entry in self.table.entries:
            offsets.append(running)
            running += entry.d_lambda * entry.m_lambda
        return offsets

    def column_index(self, diagram: YoungDiagram, q: int, alpha: int) -> int:
        """Column of basis vector (lambda, q, alpha)."""
        position = self.table.index_of(diagram)
        entry = self.table.entries[position]
        if not (0 <= q < entry.d_lambda and 0 <= alpha < entry.m_lambda):
            raise ValueError(f"Slot (q={q}, alpha={alpha}) out of range for {diagram}")
        return self.block_offsets[position] + q * entry.m_lambda + alpha

    def block(self, diagram: YoungDiagram) -> np.ndarray:
        """Columns of one block as an array of shape (d^n, d_lambda, m_lambda)."""
        position = self.table.index_of(diagram)
        entry = self.table.entries[position]
        start = self.block_offsets[position]
        width = entry.d_lambda * entry.m_lambda
        return self.matrix[:, start:start + width].reshape(self.dim, entry.d_lambda, entry.m_lambda)

    def column_map(self) -> List[dict]:
        """JSON-ready description of the block layout."""
        return [
            {
                "lambda": list(entry.diagram.padded(self.d)),
                "offset": offset,
                "d_lambda": entry.d_lambda,
                "m_lambda": entry.m_lambda,
            }
            for entry, offset in zip(self.table.entries, self.block_offsets)
        ]

    def to_blocks(self, vector: np.ndarray) -> np.ndarray:
        """Coordinates of a full-space vector (or matrix of columns) in this basis."""
        return self.matrix.T @ vector

    def from_blocks(self, coordinates: np.ndarray) -> np.ndarray:
        return self.matrix @ coordinates


def _site_operator(n: int, d: int, target: int, source: int) -> sparse.csr_matrix:
    """E_{target,source} summed over sites: replaces one symbol `source` by `target`."""
    dim = d ** n
    digits = np.unravel_index(np.arange(dim), (d,) * n)
    rows, cols = [], []
    for site in range(n):
        hits = np.nonzero(digits[site] == source)[0]
        rows.append(hits + (target - source) * d ** (n - 1 - site))
        cols.append(hits)
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    return sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(dim, dim))


@lru_cache(maxsize=16)
def _weights(n: int, d: int) -> np.ndarray:
    """Row k holds the symbol counts of basis index k."""
    digits = np.array(np.unravel_index(np.arange(d ** n), (d,) * n)).reshape(n, -1)
    return np.stack([(digits == symbol).sum(axis=0) for symbol in range(d)], axis=1)


def kernel_basis(matrix: np.ndarray, tol: float) -> np.ndarray:
    """
    Orthonormal basis of the right kernel of `matrix`, one vector per column.

    The cutoff is absolute, tol * max(1, s_max): the rows have O(1) norm, so a
    matrix made only of rounding noise has a full kernel instead of an empty one.
    """
    rows, cols = matrix.shape
    if rows == 0:
        return np.eye(cols, dtype=matrix.dtype)
    if rows < cols:
        matrix = np.vstack([matrix, np.zeros((cols - rows, cols), dtype=matrix.dtype)])
    _, singular_values, vh = svd(matrix, full_matrices=False)
    cutoff = tol * max(1.0, float(singular_values[0]) if singular_values.size else 0.0)
    rank = int(np.sum(singular_values > cutoff))
    return vh[rank:].conj().T


def _fix_sign(column: np.ndarray) -> float:
    """Sign making the largest-magnitude entry positive (earliest index on ties)."""
    magnitudes = np.round(np.abs(column), 12)
    pivot = int(np.argmax(magnitudes))
    return 1.0 if column[pivot] >= 0 else -1.0


def _highest_weight_seeds(
    n: int, d: int, diagram: YoungDiagram, raising: List[sparse.csr_matrix], tol: float
) -> np.ndarray:
    """Orthonormal basis of the highest-weight vectors of weight lambda, shape (d^n, m)."""
    dim = d ** n
    weight = np.array(diagram.padded(d))
    support = np.nonzero(np.all(_weights(n, d) == weight, axis=1))[0]
    if raising:
        stacked = np.vstack([op[:, support].toarray() for op in raising])
        stacked = stacked[np.any(stacked != 0, axis=1)]
    else:
        stacked = np.zeros((0, len(support)))
    if stacked.shape[0] == 0:
        kernel = np.eye(len(support))
    else:
        kernel = kernel_basis(stacked, tol)
    seeds = np.zeros((dim, kernel.shape[1]))
    seeds[support] = kernel
    for alpha in range(seeds.shape[1]):
        seeds[:, alpha] *= _fix_sign(seeds[:, alpha])
    return seeds


def _generate_block(
    seeds: np.ndarray, lowering: List[sparse.csr_matrix], d_lambda: int, tol: float
) -> np.ndarray:
    """
    Span the representation index by lowering the seeds.

    Returns an array (d_lambda, d^n, m). Orthogonalization coefficients are
    computed on the alpha = 0 column and applied to every alpha, which keeps
    the block in the form U^lambda (x) I.
    """
    collected = [seeds]
    queue = [seeds]
    while queue and len(collected) < d_lambda:
        current = queue.pop(0)
        for op in lowering:
            candidate = op @ current
            for _ in range(2):
                stack = np.stack(collected)
                coefficients = stack[:, :, 0] @ candidate[:, 0]
                candidate = candidate - np.tensordot(coefficients, stack, axes=1)
            norm = np.linalg.norm(candidate[:, 0])
            if norm < tol:
                continue
            candidate = candidate / norm
            candidate = candidate * _fix_sign(candidate[:, 0])
            collected.append(candidate)
            queue.append(candidate)
            if len(collected) == d_lambda:
                break
    return np.stack(collected)


def isotypic_projector(n: int, d: int, diagram: YoungDiagram, settings: Optional[LabSettings] = None) -> np.ndarray:
    """
    Character-sum projector (m_lambda / n!) sum_pi chi^lambda(pi) P(pi).

    Sums over all n! permutations, so it is meant for small n only.

    Args:
        n: Number of sites
        d: Local dimension
        diagram: Partition of n

    Returns:
        Dense d^n x d^n real projector
    """
    dim = check_dimension_cap(n, d, settings)
    table = build_table(n, d)
    m_lambda = table.entry(diagram).m_lambda
    projector = sparse.csr_matrix((dim, dim))
    for perm in itertools.permutations(range(n)):
        character = mn_character(diagram, CycleType.from_permutation(perm))
        if character:
            projector = projector + character * permutation_operator(perm, n, d, settings)
    return (projector * (m_lambda / math.factorial(n))).toarray()


def build_schur_basis(n: int, d: int, settings: Optional[LabSettings] = None) -> SchurBasis:
    """
    Build the Schur basis of (C^d)^{(x)n}.

    Each block is seeded by the highest-weight vectors of weight lambda (the
    joint kernel of the raising operators E_{i,i+1} on the weight space),
    which carry the multiplicity index alpha. The representation index q
    is generated by a breadth-first sweep of the lowering operators E_{j,i}
    (i < j, lexicographic) with Gram-Schmidt applied twice.

    Args:
        n: Number of sites (>= 1)
        d: Local dimension (>= 1)
        settings: Tolerances and dimension cap

    Returns:
        SchurBasis

    Raises:
        DimensionCapError: d^n above the cap
        BasisConstructionError: a block has the wrong size or the result is not orthogonal
    """
    if n < 1 or d < 1:
        raise ValueError(f"build_schur_basis needs n >= 1 and d >= 1, got n={n}, d={d}")
    settings = settings or get_settings()
    dim = check_dimension_cap(n, d, settings)
    tol = settings.construction_tol
    started = time.time()

    table = build_table(n, d)
    raising = [_site_operator(n, d, i, i + 1) for i in range(d - 1)]
    lowering = [_site_operator(n, d, j, i) for i in range(d) for j in range(i + 1, d)]

    columns = []
    for entry in table.entries:
        seeds = _highest_weight_seeds(n, d, entry.diagram, raising, tol)
        if seeds.shape[1] != entry.m_lambda:
            raise BasisConstructionError(
                f"Weight space of {entry.diagram} has {seeds.shape[1]} highest-weight vectors, "
                f"expected m_lambda = {entry.m_lambda}"
            )
        block = _generate_block(seeds, lowering, entry.d_lambda, tol)
        if block.shape[0] != entry.d_lambda:
            raise BasisConstructionError(
                f"Lowering sweep for {entry.diagram} closed at {block.shape[0]} vectors, "
                f"expected d_lambda = {entry.d_lambda}"
            )
        # (q, D, alpha) -> (D, q * m + alpha)
        columns.append(np.transpose(block, (1, 0, 2)).reshape(dim, -1))

    matrix = np.concatenate(columns, axis=1)
    if matrix.shape != (dim, dim):
        raise BasisConstructionError(f"Schur basis has shape {matrix.shape}, expected ({dim}, {dim})")
    residual = float(np.max(np.abs(matrix.T @ matrix - np.eye(dim))))
    if residual > tol:
        raise BasisConstructionError(f"Schur basis is not orthogonal: residual {residual:.3e}")

    basis = SchurBasis(n=n, d=d, table=table, matrix=matrix)
    if n <= 6 and dim <= 1024:
        _cross_check_projectors(basis, settings)

    log_event(
        logger,
        "schur_basis_built",
        n=n,
        d=d,
        blocks=table.size,
        orthogonality_residual=residual,
        seconds=round(time.time() - started, 3),
    )
    return basis


def _cross_check_projectors(basis: SchurBasis, settings: LabSettings):
    """Compare each block's span with the character-sum projector."""
    tol = settings.construction_tol
    for entry in basis.table.entries:
        projector = isotypic_projector(basis.n, basis.d, entry.diagram, settings)
        rank = int(round(np.trace(projector)))
        if rank != entry.d_lambda * entry.m_lambda:
            raise BasisConstructionError(
                f"Projector for {entry.diagram} has rank {rank}, "
                f"expected {entry.d_lambda * entry.m_lambda}"
            )
        columns = basis.block(entry.diagram).reshape(basis.dim, -1)
        mismatch = float(np.max(np.abs(columns @ columns.T - projector)))
        if mismatch > tol:
            raise BasisConstructionError(
                f"Block {entry.diagram} does not span the isotypic component (residual {mismatch:.3e})"
            )


def _check_unitary(matrix: np.ndarray, what: str, tol: float) -> np.ndarray:
    residual = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))) if matrix.size else 0.0
    if residual > tol:
        raise BasisConstructionError(f"{what} is not unitary (residual {residual:.3e}); basis invalid")
    return matrix


def su_irrep_matrix(
    basis: SchurBasis,
    diagram: YoungDiagram,
    g: np.ndarray,
    check_alpha: bool = False,
    settings: Optional[LabSettings] = None,
) -> np.ndarray:
    """
    U^lambda_g read from the multiplicity slot alpha = 0.

    Args:
        basis: Schur basis
        diagram: Block label
        g: d x d unitary
        check_alpha: Also compare every other multiplicity slot (tolerance 1e-8)

    Returns:
        d_lambda x d_lambda unitary
    """
    settings = settings or get_settings()
    block = basis.block(diagram)
    reference = block[:, :, 0]
    result = reference.T @ apply_tensor_power(g, reference, basis.n, basis.d)
    _check_unitary(result, f"U^{diagram}", settings.verification_tol)
    if check_alpha:
        for alpha in range(1, block.shape[2]):
            other = block[:, :, alpha]
            spread = float(np.max(np.abs(other.T @ apply_tensor_power(g, other, basis.n, basis.d) - result)))
            if spread > 1e-8:
                raise BasisConstructionError(f"U^{diagram} differs at alpha={alpha} by {spread:.3e}")
    return result


def irreps_under(basis: SchurBasis, operator: Callable[[np.ndarray], np.ndarray], group: str = "su") -> List[np.ndarray]:
    """
    Irrep matrices of every block under an operator given as a map on columns.

    The reference columns of all blocks (alpha = 0 for "su", q = 0 for "sym")
    go through `operator` in a single call.

    Args:
        basis: Schur basis
        operator: Function mapping a (d^n, k) array to its image
        group: "su" for U^lambda, "sym" for V^lambda

    Returns:
        One matrix per block in canonical order
    """
    if group not in ("su", "sym"):
        raise ValueError(f"group must be 'su' or 'sym', got '{group}'")
    references = [
        basis.block(entry.diagram)[:, :, 0] if group == "su" else basis.block(entry.diagram)[:, 0, :]
        for entry in basis.table.entries
    ]
    moved = operator(np.concatenate(references, axis=1))
    result, start = [], 0
    for reference in references:
        width = reference.shape[1]
        result.append(reference.T @ moved[:, start:start + width])
        start += width
    return result


def su_irrep_matrices(basis: SchurBasis, g: np.ndarray) -> List[np.ndarray]:
    """U^lambda_g for every block, with a single application of g^{(x)n}."""
    return irreps_under(basis, lambda v: apply_tensor_power(g, v, basis.n, basis.d), "su")


def sym_irrep_matrix(
    basis: SchurBasis,
    diagram: YoungDiagram,
    perm,
    settings: Optional[LabSettings] = None,
) -> np.ndarray:
    """
    V^lambda_pi read from the representation slot q = 0.

    Args:
        basis: Schur basis
        diagram: Block label
        perm: Permutation of n letters

    Returns:
        m_lambda x m_lambda real orthogonal matrix
    """
    settings = settings or get_settings()
    reference = basis.block(diagram)[:, 0, :]
    result = reference.T @ permute_tensor_factors(perm, reference, basis.n, basis.d)
    return _check_unitary(result, f"V^{diagram}", settings.verification_tol)


def sym_irrep_matrices(basis: SchurBasis, perm) -> List[np.ndarray]:
    """V^lambda_pi for every block."""
    return irreps_under(basis, lambda v: permute_tensor_factors(perm, v, basis.n, basis.d), "sym")

