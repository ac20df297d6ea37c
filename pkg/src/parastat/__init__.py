"""Computational parastatistics workbench.

Classification of commutation factors and R-matrices on small finite abelian
groups, truncated Fock-space representations of paraparticle algebras via the
braided Green ansatz, numeric verification of the defining trilinear
relations, and generalized Jaynes-Cummings models on the resulting ladders.
"""

from .algebras import (
    AlgebraKind,
    DegreeAssignment,
    GeneratorLabel,
    RelationInstance,
    check_grading,
    relations,
    verify_relations,
)
from .errors import (
    ArgumentError,
    HermiticityError,
    ParastatError,
    ShapeError,
    SizingError,
    StructureError,
)
from .fock import (
    GreenAnsatzRep,
    boson_ops,
    build_copy,
    build_green_rep,
    default_theta,
    fermion_ops,
    fock_submodule,
    green_embed,
    single_mode_reference,
)
from .groups import (
    Bicharacter,
    Character,
    FiniteAbelianGroup,
    GradedVector,
    RMatrix,
    bicharacter_to_rmatrix,
    braid,
    braiding_on_lines,
    check_quasitriangular,
    enumerate_bicharacters,
    is_commutation_factor,
    rmatrix_to_bicharacter,
)
from .jc import (
    HamiltonianKind,
    JCParams,
    QuenchResult,
    basis_state,
    build_hamiltonian,
    evolve,
    selection_rule_check,
    spectrum,
)
from .linalg import EigenDecomposition, bracket, cyclic_subspace, hermitian_eig, kron
from .pbf import (
    LadderLabel,
    PBFFockRep,
    braided_product_rep,
    build_pbf_rep,
    factor_search,
    klein_group_degrees,
    subspace_dims,
)

__version__ = "0.1.0"
