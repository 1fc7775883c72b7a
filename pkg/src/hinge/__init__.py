"""Exact linear algebra over prime fields and the relation-grid invariant.

The headline objects: chi attaches to an invertible matrix a grid of linear
relations that is a complete invariant of its double coset under block
strictly triangular groups; lpu and canonical_01 produce matrix normal forms;
the enumeration module cross-checks everything exhaustively on small fields.
"""

from .field import FieldElement, PrimeField, field_inv, is_prime
from .linalg import (
    Matrix,
    ShapeError,
    SingularMatrixError,
    hstack,
    rank,
    rref,
    solve_columns,
    vstack,
)
from .subspaces import (
    Subspace,
    coordinate_project,
    coordinate_subspace,
    equations_of,
    kernel_basis,
    preimage,
    subspace_from_generators,
    subspace_intersect,
    subspace_sum,
)
from .relations import InvariantViolation, LinearRelation, quotient_rows, rel_act, rel_equal
from .bihinge import (
    AxiomError,
    AxiomReport,
    BiHinge,
    Composition,
    DimensionMatrix,
    MarginError,
    bihinge_equal,
    check_axioms,
    chi,
    chi_cell,
    dimension_matrix,
    equivalent,
    hinge_act,
    normalize,
    standard_bihinge,
    standard_matrix,
)
from .lpu import (
    LpuDecomposition,
    canonical_01,
    lpu,
    perm_block_counts,
    rank_profile_permutation,
)
from .enumeration import (
    DEFAULT_BUDGET,
    BudgetError,
    CosetPartition,
    EnumerationBudget,
    all_bihinges_brute,
    contingency_tables,
    decode_matrix,
    double_cosets_brute,
    encode_matrix,
    enum_gl,
    enum_subspaces,
    enum_t_minus,
    enum_t_plus,
    gaussian_binomial,
    gl_order,
    predicted_coset_count,
    stab_order_formula,
    stabilizer_brute,
    subspace_count,
    t_generators,
)
from .serialize import (
    HeaderMismatchError,
    Problem,
    ProblemFormatError,
    dumps_json,
    invariant_report,
    load_problem,
    problem_from_dict,
    problem_to_dict,
    report_to_bihinge,
)
from .selfcheck import run_selfcheck

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "AxiomReport",
    "BiHinge",
    "BudgetError",
    "Composition",
    "CosetPartition",
    "DEFAULT_BUDGET",
    "DimensionMatrix",
    "EnumerationBudget",
    "FieldElement",
    "HeaderMismatchError",
    "InvariantViolation",
    "LinearRelation",
    "LpuDecomposition",
    "MarginError",
    "Matrix",
    "PrimeField",
    "Problem",
    "ProblemFormatError",
    "ShapeError",
    "SingularMatrixError",
    "Subspace",
    "all_bihinges_brute",
    "bihinge_equal",
    "canonical_01",
    "check_axioms",
    "chi",
    "chi_cell",
    "contingency_tables",
    "coordinate_project",
    "coordinate_subspace",
    "decode_matrix",
    "dimension_matrix",
    "double_cosets_brute",
    "dumps_json",
    "encode_matrix",
    "enum_gl",
    "enum_subspaces",
    "enum_t_minus",
    "enum_t_plus",
    "equations_of",
    "equivalent",
    "field_inv",
    "gaussian_binomial",
    "gl_order",
    "hinge_act",
    "hstack",
    "invariant_report",
    "is_prime",
    "kernel_basis",
    "load_problem",
    "lpu",
    "normalize",
    "perm_block_counts",
    "predicted_coset_count",
    "preimage",
    "problem_from_dict",
    "problem_to_dict",
    "quotient_rows",
    "rank",
    "rank_profile_permutation",
    "rel_act",
    "rel_equal",
    "report_to_bihinge",
    "rref",
    "run_selfcheck",
    "solve_columns",
    "stab_order_formula",
    "stabilizer_brute",
    "standard_bihinge",
    "standard_matrix",
    "subspace_count",
    "subspace_from_generators",
    "subspace_intersect",
    "subspace_sum",
    "t_generators",
    "vstack",
]
