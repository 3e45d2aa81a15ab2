"""Exact toolkit for genuinely nonlocal orthogonal product-state sets.

Construct the product-state families on qudit systems, solve the
orthogonality-preservation constraints exactly over cyclotomic fields,
and emit machine-checkable nonlocality certificates.
"""

from .cyclotomic import (
    Cyclotomic,
    IncompatibleOrderError,
    cyclotomic_polynomial,
    omega,
    parse_literal,
    root_of_unity,
    to_literal,
)
from .states import (
    LocalFactor,
    NotStrippableError,
    OrthogonalityReport,
    ProductState,
    Provenance,
    StateError,
    StateSet,
    basis_ket,
    build_factor,
    check_mutual_orthogonality,
    group_parties,
    ket_sum,
    strip_party,
)
from .constructions import (
    ConstructionDriftError,
    ConstructionSpec,
    Family,
    InadmissibleDimensionsError,
    gen_bipartite,
    gen_named,
    gen_type1_npartite,
    gen_type1_tripartite,
    gen_type2_npartite,
    gen_type2_tripartite,
    lemma1_pairs,
    proof_blocks,
)
from .oplm import (
    ConstraintSystem,
    HermitianOperator,
    OplmReport,
    assemble,
    float_solution_dim,
    matrix_in_span,
    operator_satisfies,
    povm_from_witness,
    solution_space,
)
from .verdicts import (
    Bipartition,
    Classification,
    Genuineness,
    GnlType,
    Irreducibility,
    ReductionWitness,
    Rule,
    RuleCertificate,
    Unknown,
    UnknownReason,
    all_bipartitions,
    certify_bipartition,
    check_irreducible,
    classify,
    find_reduction,
    verify_certificate,
    verify_classification,
)

__version__ = "0.1.0"
