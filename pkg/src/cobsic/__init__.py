"""cobsic: complete orthogonal operator bases and GSIC/SIC POVMs.

A complete orthogonal basis (COB) is a set of d**2 Hermitian operators with
pairwise Hilbert-Schmidt products delta_ij/d that sum to the identity.
Mixing its elements with the maximally mixed operator yields the general
symmetric informationally complete POVMs, and every GSIC POVM arises that
way; the extreme admissible mixing weight lambda* decides whether the result
is a SIC POVM and controls the worst-case error of linear state tomography.
This package constructs COBs (from operator bases, orthogonal matrices, and
mutually unbiased bases/striations), maps them to GSIC POVMs and back,
analyzes SIC capability, and validates the tomographic error formulas by
seeded Monte Carlo simulation.
"""

from .cob import (
    Cob,
    SicCriterionReport,
    SpectralProfile,
    min_eigenvalue_bound,
    negativity_oracle,
    quasiprobability,
    saturating_spectrum,
    sic_criterion,
    sic_trace_targets,
    spectral_profile,
    state_negativity,
    validate_cob,
)
from .constructions import (
    MubSet,
    MusSet,
    WeylHeisenbergSet,
    construction1,
    construction2,
    construction2_via_gram_schmidt,
    construction3,
    covariant_cob,
    is_fiducial_vector,
    is_prime,
    line_index,
    mub_prime,
    mus_prime,
    orthogonal_matrix_fixed_row,
    qubit_fiducial_operator,
    weyl_heisenberg,
)
from .errors import (
    CobsicError,
    ConstraintError,
    CountError,
    DegenerateElementError,
    DegenerateGsicError,
    DimensionError,
    InvalidOperatorError,
    InvalidStateError,
    LambdaRangeError,
    NotFiducialError,
    NotInformationallyCompleteError,
    ParseError,
    RangeError,
    RankDeficientError,
    UnsupportedDimensionError,
    ValidationFailure,
)
from .gsic import (
    GsicPovm,
    PovmValidationReport,
    average_purity,
    canonical_gsic,
    cob_to_gsic,
    gsic_constants,
    gsic_to_cob,
    is_informationally_complete,
    validate_povm,
)
from .operators import (
    OperatorBasis,
    eig_hermitian,
    gell_mann_basis,
    gram_schmidt_operators,
    hs_gram,
    hs_inner,
    hs_norm,
    random_hermitian,
    require_hermitian,
)
from .serialization import KINDS, OperatorSetFile, dumps, load, loads, save
from .tomography import (
    DualFrame,
    TomographyReport,
    canonical_dual,
    gsic_max_mse,
    max_scaled_mse,
    maximally_mixed,
    random_density_matrix,
    random_pure_state,
    scaled_mse,
    simulate_tomography,
    zhu_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Cob",
    "CobsicError",
    "ConstraintError",
    "CountError",
    "DegenerateElementError",
    "DegenerateGsicError",
    "DimensionError",
    "DualFrame",
    "GsicPovm",
    "InvalidOperatorError",
    "InvalidStateError",
    "KINDS",
    "LambdaRangeError",
    "MubSet",
    "MusSet",
    "NotFiducialError",
    "NotInformationallyCompleteError",
    "OperatorBasis",
    "OperatorSetFile",
    "ParseError",
    "PovmValidationReport",
    "RangeError",
    "RankDeficientError",
    "SicCriterionReport",
    "SpectralProfile",
    "TomographyReport",
    "UnsupportedDimensionError",
    "ValidationFailure",
    "WeylHeisenbergSet",
    "average_purity",
    "canonical_dual",
    "canonical_gsic",
    "cob_to_gsic",
    "construction1",
    "construction2",
    "construction2_via_gram_schmidt",
    "construction3",
    "covariant_cob",
    "dumps",
    "eig_hermitian",
    "gell_mann_basis",
    "gram_schmidt_operators",
    "gsic_constants",
    "gsic_max_mse",
    "gsic_to_cob",
    "hs_gram",
    "hs_inner",
    "hs_norm",
    "is_fiducial_vector",
    "is_informationally_complete",
    "is_prime",
    "line_index",
    "load",
    "loads",
    "max_scaled_mse",
    "maximally_mixed",
    "min_eigenvalue_bound",
    "mub_prime",
    "mus_prime",
    "negativity_oracle",
    "orthogonal_matrix_fixed_row",
    "quasiprobability",
    "qubit_fiducial_operator",
    "random_density_matrix",
    "random_hermitian",
    "random_pure_state",
    "require_hermitian",
    "saturating_spectrum",
    "save",
    "scaled_mse",
    "sic_criterion",
    "sic_trace_targets",
    "simulate_tomography",
    "spectral_profile",
    "state_negativity",
    "validate_cob",
    "validate_povm",
    "weyl_heisenberg",
    "zhu_bound",
]
