"""Dirichlet-type spaces on the bidisc, computed on finite monomial truncations."""
from ._accel import backend_name
from .bipoly import BiPoly, divide_slice, gleason_split, hardy_norm_sq, partial, slice_profile
from .catalog import catalog, catalog_pairs
from .errors import (
    BasisTooSmall,
    BidiscError,
    DomainError,
    InconsistentNormalization,
    NotPositiveDefinite,
    RankAmbiguous,
    SliceNotVanishing,
    ValidationError,
    WindowEmpty,
)
from .gram import (
    GramMatrix,
    MonomialBasis,
    gram_entry,
    gram_matrix,
    inner_product,
    kernel_coeffs,
    norm_sq,
    recover_moments,
    richter_rhs,
)
from .koszul import cohomology, cohomology_dims, fredholm_index, gleason_solve, koszul_build
from .measures import (
    Atoms,
    Lebesgue,
    Mixture,
    MomentSequence,
    TrigDensity,
    measure_from_json,
    poisson,
    toeplitz_feasibility,
)
from .quadrature import QuadSpec, dirichlet_integral_quad, inner_product_quad
from .toral import (
    adjoint_kernel_check,
    build_pair,
    moment_identity_residual,
    reconstruct_gram_from_orbit,
    toral_residual,
    verify_model_hypotheses,
    wandering_check,
)

__version__ = "0.1.0"
