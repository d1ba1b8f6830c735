"""Separability of two-mode Gaussian states from their correlation matrices.

Classifies any two-mode Gaussian state, given its 4x4 correlation matrix
(ordering x1, p1, x2, p2; vacuum = identity scaling), as entangled or
separable via the total-variance criterion made exact through standard-form
reductions, cross-checked by a partial-transpose oracle, and certified in
the separable case by an explicit positive P-representation.
"""

from .core import (
    EPS_DET,
    EPS_INV,
    EPS_PSD,
    EPS_SYM,
    OMEGA,
    CorrelationMatrix,
    EprPair,
    Llubo,
    LluboInvariants,
    apply_llubo,
    llubo_invariants,
    validate,
    variance_pair,
)
from .exceptions import (
    CvsepError,
    DegenerateForm,
    DegenerateMode,
    InvalidLlubo,
    NoPositiveRoot,
    NotFinite,
    NotInSeparableRegime,
    NotPhysical,
    NotSymmetric,
    RootNotBracketed,
    ZeroCoefficient,
)
from .oracle import (
    ModeSpec,
    SeparableEnsemble,
    ensemble_covariance,
    ppt_decision,
    reconstruct_from_p_samples,
    sample_random_physical,
    sample_separable_ensemble,
)
from .scenarios import (
    INFINITE,
    ScanPoint,
    ThermalScenario,
    evolve_thermal,
    scan_boundary,
    threshold_time,
    tmsv_matrix,
)
from .separability import (
    EPS_DECIDE,
    Decision,
    PRepresentation,
    SeparabilityVerdict,
    TotalVarianceResult,
    construct_epr_pair,
    decide_separability,
    p_representation,
    reconstruct_analytic,
    total_variance_check,
)
from .standard_form import (
    EPS_FORM,
    EPS_ROOT,
    MODE_SWAP,
    StandardFormI,
    StandardFormII,
    balance_residuals,
    form_i_layout,
    reduction_input,
    solve_form_II_root,
    solve_r2_given_r1,
    to_standard_form_I,
    to_standard_form_II,
)

__version__ = "1.0.0"

__all__ = [
    "CorrelationMatrix",
    "CvsepError",
    "Decision",
    "DegenerateForm",
    "DegenerateMode",
    "EPS_DECIDE",
    "EPS_DET",
    "EPS_FORM",
    "EPS_INV",
    "EPS_PSD",
    "EPS_ROOT",
    "EPS_SYM",
    "EprPair",
    "INFINITE",
    "InvalidLlubo",
    "Llubo",
    "LluboInvariants",
    "MODE_SWAP",
    "ModeSpec",
    "NoPositiveRoot",
    "NotFinite",
    "NotInSeparableRegime",
    "NotPhysical",
    "NotSymmetric",
    "OMEGA",
    "PRepresentation",
    "RootNotBracketed",
    "ScanPoint",
    "SeparabilityVerdict",
    "SeparableEnsemble",
    "StandardFormI",
    "StandardFormII",
    "TotalVarianceResult",
    "ThermalScenario",
    "ZeroCoefficient",
    "apply_llubo",
    "balance_residuals",
    "construct_epr_pair",
    "decide_separability",
    "ensemble_covariance",
    "evolve_thermal",
    "form_i_layout",
    "llubo_invariants",
    "p_representation",
    "ppt_decision",
    "reconstruct_analytic",
    "reconstruct_from_p_samples",
    "reduction_input",
    "sample_random_physical",
    "sample_separable_ensemble",
    "scan_boundary",
    "solve_form_II_root",
    "solve_r2_given_r1",
    "total_variance_check",
    "threshold_time",
    "tmsv_matrix",
    "to_standard_form_I",
    "to_standard_form_II",
    "validate",
    "variance_pair",
]
