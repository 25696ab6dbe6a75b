"""Exact widths of conjunctive queries and their cores."""
from .cover import (
    CoverCertificatePair,
    FractionalCover,
    FractionalIndependentSet,
    IntegralCover,
    rho_integral,
    rho_star,
    transfer_cover,
    verify_cover,
    verify_pair,
)
from .cq import (
    Atom,
    ConjunctiveQuery,
    Const,
    Database,
    Var,
    canonical_database,
    evaluate,
    parse_query,
    render_query,
)
from .decomposition import (
    TreeDecomposition,
    WidthReport,
    b_width_exact,
    f_width,
    fhw_exact,
    ghw_exact,
    is_valid_decomposition,
    restrict_to_core,
    sampled_lower_bound_width,
)
from .errors import SemwidthError
from .functions import WidthFunction, extend_function, modular_from_fis, validate_function
from .generators import gen_inflation, gen_parity_grid, gen_random_cq
from .homomorphism import (
    compute_core,
    find_homomorphism,
    is_core,
    is_equivalent,
    is_homomorphism,
    normalize_retraction,
)
from .hypergraph import Hypergraph, check_homomorphism, hypergraph_of, image
from .semantic import SemanticWidthReport, reformulation_decision, semantic_width, width

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "b_width_exact",
    "canonical_database",
    "check_homomorphism",
    "compute_core",
    "ConjunctiveQuery",
    "Const",
    "CoverCertificatePair",
    "Database",
    "evaluate",
    "extend_function",
    "f_width",
    "fhw_exact",
    "find_homomorphism",
    "FractionalCover",
    "FractionalIndependentSet",
    "gen_inflation",
    "gen_parity_grid",
    "gen_random_cq",
    "ghw_exact",
    "Hypergraph",
    "hypergraph_of",
    "image",
    "IntegralCover",
    "is_core",
    "is_equivalent",
    "is_homomorphism",
    "is_valid_decomposition",
    "modular_from_fis",
    "normalize_retraction",
    "parse_query",
    "reformulation_decision",
    "render_query",
    "restrict_to_core",
    "rho_integral",
    "rho_star",
    "sampled_lower_bound_width",
    "semantic_width",
    "SemanticWidthReport",
    "SemwidthError",
    "transfer_cover",
    "TreeDecomposition",
    "validate_function",
    "Var",
    "verify_cover",
    "verify_pair",
    "width",
    "WidthFunction",
    "WidthReport",
]
