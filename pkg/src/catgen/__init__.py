"""catgen: constructing and conditionally generating optical Schrodinger cat qudits."""

from .cats import (
    CatSpec,
    alpha_rep_coeffs,
    fidelity_scq,
    max_fidelity_over_alpha,
    scalar_product_scq,
    scs_normalization,
    scs_vector,
    scq_vector,
    table1_search,
)
from .cascade import (
    CascadeConfig,
    FactorRoots,
    FitResult,
    cascade_factors,
    cascade_output_state,
    fit_cascade,
    oracle_cascade,
    target_roots,
)
from .entangled import (
    BSDecomposition,
    EntangledInput,
    HeraldedResult,
    bs_decomposition,
    dm_coefficients,
    heralded_state,
    maximize_probability_over_alpha_prime,
    oracle_scheme_entangled,
    reconstruct_input,
    success_probability_scq,
)
from .fock import (
    BeamSplitter,
    CutoffError,
    FockVector,
    MultiModeState,
    apply_beamsplitter,
    apply_displacement_mode,
    coherent_state,
    compose_displacements,
    displaced_number_state,
    displacement_coeff,
    displacement_matrix,
    project_mode,
    suggested_cutoff,
)
from .wigner import WignerGrid, negativity_summary, wigner_fidelity, wigner_of

__all__ = [
    "BSDecomposition",
    "BeamSplitter",
    "CascadeConfig",
    "CatSpec",
    "CutoffError",
    "EntangledInput",
    "FactorRoots",
    "FitResult",
    "FockVector",
    "HeraldedResult",
    "MultiModeState",
    "WignerGrid",
    "alpha_rep_coeffs",
    "apply_beamsplitter",
    "apply_displacement_mode",
    "bs_decomposition",
    "cascade_factors",
    "cascade_output_state",
    "coherent_state",
    "compose_displacements",
    "displaced_number_state",
    "displacement_coeff",
    "displacement_matrix",
    "dm_coefficients",
    "fidelity_scq",
    "fit_cascade",
    "heralded_state",
    "max_fidelity_over_alpha",
    "maximize_probability_over_alpha_prime",
    "negativity_summary",
    "oracle_cascade",
    "oracle_scheme_entangled",
    "project_mode",
    "reconstruct_input",
    "scalar_product_scq",
    "scs_normalization",
    "scs_vector",
    "scq_vector",
    "success_probability_scq",
    "suggested_cutoff",
    "table1_search",
    "target_roots",
    "wigner_fidelity",
    "wigner_of",
]
