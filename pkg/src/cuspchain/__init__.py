"""Equivalence-chain certificates between cusp data of classical form spaces.

Exact construction and independent verification of certificate chains
joining isotropic subspaces of quadratic, symplectic and hermitian spaces,
with the supporting normal forms, isotropic-vector searches, explicit model
embeddings and lattice level computations.
"""

from .chains import (
    BoundaryDescent,
    ChainCertificate,
    Failure,
    ManinDrinfeldLeaf,
    OrthBoundaryPlane,
    OrthInteriorCurve,
    OrthSegre,
    ProductSplit,
    VerificationReport,
    build_chain_orthogonal,
    build_chain_symplectic,
    build_chain_unitary,
    verify_certificate,
)
from .exact import Matrix, QuadFieldElement, hnf, rref_basis, smith
from .forms import (
    FormSpace,
    Signature,
    Subspace,
    canonical_subspace,
    is_perfect_pairing,
    orthogonal_complement,
    pairing_kernels,
    pairing_matrix,
    preserves_form,
    push_subspace,
    signature_of,
    subquotient,
    subspace_intersection,
    subspace_sum,
)
from .isotropic import (
    SearchConfig,
    find_isotropic_vector,
    hyperbolic_complete,
    isotropic_dual_complement,
    j0_construct,
    split_off_kernels,
    third_isotropic_lines,
)
from .levels import FullLattice, congruence_membership, containment_level
from .embeddings import (
    MatrixLattice,
    SL2Element,
    hermitian_m2_space,
    order_containment_scale,
    order_of_lattice,
    segre_point,
    sl2_conjugation_image,
    sl2_pair_orthogonal_image,
    sl2_su11_image,
    trace_zero_space,
    veronese_point,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryDescent",
    "ChainCertificate",
    "Failure",
    "FormSpace",
    "FullLattice",
    "ManinDrinfeldLeaf",
    "Matrix",
    "MatrixLattice",
    "OrthBoundaryPlane",
    "OrthInteriorCurve",
    "OrthSegre",
    "ProductSplit",
    "QuadFieldElement",
    "SL2Element",
    "SearchConfig",
    "Signature",
    "Subspace",
    "VerificationReport",
    "build_chain_orthogonal",
    "build_chain_symplectic",
    "build_chain_unitary",
    "canonical_subspace",
    "congruence_membership",
    "containment_level",
    "find_isotropic_vector",
    "hermitian_m2_space",
    "hnf",
    "hyperbolic_complete",
    "is_perfect_pairing",
    "isotropic_dual_complement",
    "j0_construct",
    "order_containment_scale",
    "order_of_lattice",
    "orthogonal_complement",
    "pairing_kernels",
    "pairing_matrix",
    "preserves_form",
    "push_subspace",
    "rref_basis",
    "segre_point",
    "signature_of",
    "sl2_conjugation_image",
    "sl2_pair_orthogonal_image",
    "sl2_su11_image",
    "smith",
    "split_off_kernels",
    "subquotient",
    "subspace_intersection",
    "subspace_sum",
    "third_isotropic_lines",
    "trace_zero_space",
    "verify_certificate",
    "veronese_point",
]
