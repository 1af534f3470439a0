"""
Basis Verification
Residual checks for a built Schur basis: orthogonality, block structure under
SU(d) and S(n), and the commutation of the two actions.
"""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from utils import get_logger, get_settings, log_event
from utils.config import LabSettings
from .group_elements import apply_tensor_power, haar_su, permute_tensor_factors, random_permutation
from .schur_basis import SchurBasis, su_irrep_matrices, sym_irrep_matrices

logger = get_logger("Schur")


@dataclass
class BasisVerification:
    """Worst residuals observed over all samples."""
    n: int
    d: int
    samples: int
    unitarity_residual: float
    su_block_residual: float
    sym_block_residual: float
    commutation_residual: float
    dimensions_match: bool
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.dimensions_match and max(
            self.unitarity_residual,
            self.su_block_residual,
            self.sym_block_residual,
            self.commutation_residual,
        ) < self.tolerance

    def to_dict(self) -> dict:
        result = asdict(self)
        result["passed"] = self.passed
        return result


def verify_basis(
    basis: SchurBasis,
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    settings: Optional[LabSettings] = None,
) -> BasisVerification:
    """
    Check a basis on Haar-random g and uniform permutations.

    For every block, B_lambda^T g^{(x)n} B equals U^lambda (x) I on the block and
    vanishes elsewhere; likewise permutations give I (x) V^lambda, and the
    product g^{(x)n} P(pi) gives U^lambda (x) V^lambda.

    Args:
        basis: Basis to check
        samples: Number of (g, pi) pairs (defaults to settings.verification_samples)
        rng: numpy Generator
        settings: Lab settings

    Returns:
        BasisVerification
    """
    settings = settings or get_settings()
    samples = samples or settings.verification_samples
    rng = rng if rng is not None else np.random.default_rng(0)
    n, d, dim = basis.n, basis.d, basis.dim
    matrix = basis.matrix

    unitarity = float(np.max(np.abs(matrix.T @ matrix - np.eye(dim))))
    dimensions_match = all(
        basis.block(e.diagram).shape[1:] == (e.d_lambda, e.m_lambda) for e in basis.table.entries
    )

    su_residual = sym_residual = commutation = 0.0
    for _ in range(samples):
        g = haar_su(d, rng)
        perm = random_permutation(n, rng)
        su_blocks = su_irrep_matrices(basis, g)
        sym_blocks = sym_irrep_matrices(basis, perm)
        for entry, u, v in zip(basis.table.entries, su_blocks, sym_blocks):
            columns = basis.block(entry.diagram).reshape(dim, -1)
            rotated = apply_tensor_power(g, columns, n, d)
            permuted = permute_tensor_factors(perm, columns, n, d)
            both = apply_tensor_power(g, permuted, n, d)

            expected_su = np.kron(u, np.eye(entry.m_lambda))
            expected_sym = np.kron(np.eye(entry.d_lambda), v)
            # full coordinates: in-block part must match, everything else must vanish
            su_residual = max(su_residual, _block_residual(columns, rotated, expected_su))
            sym_residual = max(sym_residual, _block_residual(columns, permuted, expected_sym))
            commutation = max(commutation, _block_residual(columns, both, np.kron(u, v)))

    report = BasisVerification(
        n=n,
        d=d,
        samples=samples,
        unitarity_residual=unitarity,
        su_block_residual=su_residual,
        sym_block_residual=sym_residual,
        commutation_residual=commutation,
        dimensions_match=dimensions_match,
        tolerance=settings.verification_tol,
    )
    log_event(logger, "schur_basis_verified", **report.to_dict())
    return report


def _block_residual(columns: np.ndarray, image: np.ndarray, expected: np.ndarray) -> float:
    in_block = columns.T @ image
    outside = image - columns @ in_block
    residual = np.max(np.abs(in_block - expected)) if expected.size else 0.0
    if outside.size:
        residual = max(residual, np.max(np.abs(outside)))
    return float(residual)
