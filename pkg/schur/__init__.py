"""
Schur Module
Numerical Schur bases, irrep matrices and conjugation intertwiners
"""

from .group_elements import (
    haar_su,
    is_special_unitary,
    random_permutation,
    parse_cycles,
    compose,
    inverse,
    validate_permutation,
    permutation_operator,
    permute_tensor_factors,
    apply_tensor_power,
    tensor_power,
)
from .schur_basis import (
    SchurBasis,
    build_schur_basis,
    isotypic_projector,
    kernel_basis,
    su_irrep_matrix,
    su_irrep_matrices,
    sym_irrep_matrix,
    sym_irrep_matrices,
    irreps_under,
)
from .intertwiner import conjugation_intertwiner, conjugate_partner
from .basis_cache import SchurBasisCache, save_basis, load_basis, write_array, read_array
from .verification import BasisVerification, verify_basis

__all__ = [
    'haar_su',
    'is_special_unitary',
    'random_permutation',
    'parse_cycles',
    'compose',
    'inverse',
    'validate_permutation',
    'permutation_operator',
    'permute_tensor_factors',
    'apply_tensor_power',
    'tensor_power',
    'SchurBasis',
    'build_schur_basis',
    'isotypic_projector',
    'kernel_basis',
    'su_irrep_matrix',
    'su_irrep_matrices',
    'sym_irrep_matrix',
    'sym_irrep_matrices',
    'irreps_under',
    'conjugation_intertwiner',
    'conjugate_partner',
    'SchurBasisCache',
    'save_basis',
    'load_basis',
    'write_array',
    'read_array',
    'BasisVerification',
    'verify_basis',
]
