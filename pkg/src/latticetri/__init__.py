"""Exact decision and certification of ideal-triangularizability for
nonnegative matrices and finitely generated matrix semigroups."""

__version__ = "0.1.0"

from .diagonal import (
    Partition,
    atomic_diagonal,
    diagonal_band_projection_check,
    max_row_sum_norm,
    schep_oracle,
    set_partitions,
    voigt_contraction_check,
)
from .errors import (
    DimensionError,
    DomainError,
    InternalConsistencyError,
    LatticeTriError,
    NegativeEntryError,
    NotIdempotentError,
    NotInvariantError,
    ParseError,
)
from .exact import (
    CharPoly,
    Matrix,
    Permutation,
    char_poly,
    is_nilpotent,
    parse_rational,
    permute_similarity,
    rank,
    root_multiplicity,
    spectral_radius_estimate,
)
from .generate import GenSpec, SplitMix64, gen_idempotent, gen_matrix, gen_semigroup_framed
from .idempotent import (
    IdempotentDecomposition,
    absolute_kernel,
    decompose_idempotent,
    range_ideal,
    rank_one_irreducibility,
    triangularizable_idempotent_check,
    verify_idempotent,
)
from .lattice import (
    CoordIdeal,
    IdealChain,
    SupportDigraph,
    invariant_ideals,
    reducibility_witnesses,
    scc_condensation,
    support_union,
)
from .semigroup import (
    SemigroupClosure,
    SemigroupVerdict,
    diag_commutator_condition,
    generate_closure,
    quasinilpotent_semigroup_check,
    semigroup_pipeline,
)
from .triangular import (
    CriteriaReport,
    criteria_equivalence,
    criterion_charpoly_diag,
    criterion_nilpotent_offdiag,
    criterion_structural,
    ringrose_check,
)

__all__ = [
    "CharPoly",
    "CoordIdeal",
    "CriteriaReport",
    "DimensionError",
    "DomainError",
    "GenSpec",
    "IdealChain",
    "IdempotentDecomposition",
    "InternalConsistencyError",
    "LatticeTriError",
    "Matrix",
    "NegativeEntryError",
    "NotIdempotentError",
    "NotInvariantError",
    "ParseError",
    "Partition",
    "Permutation",
    "SemigroupClosure",
    "SemigroupVerdict",
    "SplitMix64",
    "SupportDigraph",
    "absolute_kernel",
    "atomic_diagonal",
    "char_poly",
    "criteria_equivalence",
    "criterion_charpoly_diag",
    "criterion_nilpotent_offdiag",
    "criterion_structural",
    "decompose_idempotent",
    "diag_commutator_condition",
    "diagonal_band_projection_check",
    "gen_idempotent",
    "gen_matrix",
    "gen_semigroup_framed",
    "generate_closure",
    "invariant_ideals",
    "is_nilpotent",
    "max_row_sum_norm",
    "parse_rational",
    "permute_similarity",
    "quasinilpotent_semigroup_check",
    "range_ideal",
    "rank",
    "rank_one_irreducibility",
    "reducibility_witnesses",
    "ringrose_check",
    "root_multiplicity",
    "scc_condensation",
    "schep_oracle",
    "semigroup_pipeline",
    "set_partitions",
    "spectral_radius_estimate",
    "support_union",
    "triangularizable_idempotent_check",
    "verify_idempotent",
    "voigt_contraction_check",
    "__version__",
]
