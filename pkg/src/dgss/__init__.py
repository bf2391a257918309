"""Exact tools for deciding when a self-converse oriented graph is determined
by its generalized skew spectrum."""

from .criterion import (
    AnisotropyAudit,
    AuditVerdict,
    CriterionReport,
    SnfPatternResult,
    Verdict,
    anisotropy_audit,
    dgss_check,
    snf_pattern_check,
    totally_isotropic_check,
)
from .graph import (
    GraphFormatError,
    OrientedGraph,
    anti_automorphism,
    converse,
    find_isomorphism,
    parse_oriented_graph,
    skew_adjacency,
)
from .linalg import (
    PrimeFactorization,
    SmithDecomposition,
    char_poly,
    determinant,
    factorize,
    kernel_mod_p,
    rank_mod_p,
    smith_normal_form,
    solve_rational,
)
from .search import (
    MateSearchResult,
    SpectrumIndex,
    enumerate_oriented_graphs,
    enumerate_self_converse,
    find_mates,
    random_self_converse,
    verify_level_laws,
)
from .spectral import (
    GeneralizedSkewSpectrum,
    RationalOrthogonal,
    generalized_skew_spectrum,
    is_generalized_cospectral,
    level_of,
    recover_Q,
    walk_matrix,
)

__version__ = "0.1.0"
