"""
Conjugation Intertwiners
Unitaries V^lambda with (U^lambda_g)* = V^lambda U^{lambda-bar}_g (V^lambda)^dagger.
"""

from typing import Optional

import numpy as np

from repcore import YoungDiagram, associated_diagram
from utils import IntertwinerError, get_logger, get_settings, log_event
from utils.config import LabSettings
from .group_elements import haar_su
from .schur_basis import SchurBasis, kernel_basis, su_irrep_matrix

logger = get_logger("Schur")


def conjugate_partner(diagram: YoungDiagram, basis: SchurBasis, conj_basis: SchurBasis) -> YoungDiagram:
    """Associated diagram of lambda padded to the box count of conj_basis."""
    return associated_diagram(diagram, basis.d, pad_to=conj_basis.n)


def conjugation_intertwiner(
    diagram: YoungDiagram,
    basis: SchurBasis,
    conj_basis: SchurBasis,
    rng: Optional[np.random.Generator] = None,
    samples: int = 3,
    attempts: int = 4,
    settings: Optional[LabSettings] = None,
) -> np.ndarray:
    """
    Solve (U^lambda_g)* X = X U^{lambda-bar}_g over sampled g and rescale X to a unitary.

    U^lambda comes from `basis` (n boxes) and U^{lambda-bar} from `conj_basis`,
    whose box count fixes the padding of the associated diagram. In
    row-major vectorization the equation reads
    (A (x) I - I (x) B^T) vec(X) = 0 with A = (U^lambda)*, B = U^{lambda-bar}.

    Args:
        diagram: Block label of basis
        basis: Schur basis holding lambda
        conj_basis: Schur basis holding the associated diagram
        rng: numpy Generator for the samples
        samples: Group elements stacked per attempt
        attempts: Resampling rounds before giving up on a degenerate kernel

    Returns:
        d_lambda x d_lambda unitary V^lambda (largest entry made real positive)

    Raises:
        IntertwinerError: the kernel is empty (mismatched diagrams) or stays degenerate
    """
    if basis.d != conj_basis.d:
        raise ValueError("Both bases must have the same local dimension")
    settings = settings or get_settings()
    rng = rng if rng is not None else np.random.default_rng(0)
    partner = conjugate_partner(diagram, basis, conj_basis)
    size = basis.table.entry(diagram).d_lambda
    if conj_basis.table.entry(partner).d_lambda != size:
        raise IntertwinerError(f"{diagram} and {partner} have different dimensions")

    identity = np.eye(size)
    equations = []
    for attempt in range(attempts):
        for _ in range(samples):
            g = haar_su(basis.d, rng)
            a = su_irrep_matrix(basis, diagram, g, settings=settings).conj()
            b = su_irrep_matrix(conj_basis, partner, g, settings=settings)
            equations.append(np.kron(a, identity) - np.kron(identity, b.T))
        kernel = kernel_basis(np.vstack(equations), settings.construction_tol)
        if kernel.shape[1] == 0:
            raise IntertwinerError(f"No intertwiner between (U^{diagram})* and U^{partner}")
        if kernel.shape[1] == 1:
            break
        log_event(logger, "intertwiner_resample", diagram=str(diagram), kernel_dim=kernel.shape[1], attempt=attempt)
    else:
        raise IntertwinerError(f"Intertwiner kernel for {diagram} stayed {kernel.shape[1]}-dimensional")

    x = kernel[:, 0].reshape(size, size)
    x = x / np.sqrt(np.trace(x @ x.conj().T).real / size)
    pivot = np.unravel_index(np.argmax(np.round(np.abs(x), 12)), x.shape)
    x = x * (abs(x[pivot]) / x[pivot])

    residual = float(np.max(np.abs(x.conj().T @ x - identity)))
    if residual > settings.construction_tol:
        raise IntertwinerError(f"Rescaled intertwiner for {diagram} is not unitary (residual {residual:.3e})")
    return x
