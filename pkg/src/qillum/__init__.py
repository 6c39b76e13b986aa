"""Error-probability bounds for Gaussian quantum illumination.

A target of reflectivity kappa is probed with one mode of an entangled
two-mode Gaussian state while the other mode is retained; deciding
whether the return is pure thermal background or carries the reflected
signal is a binary state-discrimination problem.  This package builds
the competing hypothesis states for three probe families (two-mode
squeezed vacuum, with additional local squeezing, and with additional
global squeezing), evaluates Chernoff-family upper bounds on the
discrimination error together with closed-form weak-signal asymptotics
and a coherent-state benchmark, and validates the Gaussian machinery
against a brute-force truncated Fock-space simulation.

The ``qillum`` console script exposes single-point evaluation,
parameter sweeps, figure-data generation, and the oracle cross-check.
"""

from .bounds import (
    AdvantageResult,
    BoundResult,
    OverlapResult,
    RootBracketError,
    TmsAsymptotic,
    TssAsymptotic,
    coherent_qb_bound,
    critical_r1,
    g_p,
    gamma1,
    gamma2,
    lambda_p,
    q_s,
    qb_bound,
    qc_bound,
    tms_qb_asymptotic,
    tss_qb_asymptotic,
)
from .fock import (
    FockOperator,
    OracleStates,
    TruncationError,
    TruncationReport,
    covariance_of,
    helstrom_error_single_copy,
    lossy_thermal_channel,
    oracle_hypotheses,
    q_s_numeric,
    thermal_state,
    tmsv_ket,
)
from .scenarios import (
    HypothesisPair,
    ModePhotonNumbers,
    ScenarioParams,
    build_hypotheses,
    tms_hypotheses,
    tms_probe,
    tmsv_hypotheses,
    tss_hypotheses,
    tss_probe,
)
from .symplectic import (
    CovarianceMatrix,
    GaussianState,
    NumericalError,
    SymplecticMatrix,
    UnphysicalStateError,
    WilliamsonDecomposition,
    apply_symplectic,
    log_negativity,
    partial_transpose,
    single_mode_squeeze_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
    tmsv_covariance,
    two_mode_squeeze_symplectic,
    williamson,
)

__version__ = "0.1.0"

__all__ = [
    "AdvantageResult",
    "BoundResult",
    "CovarianceMatrix",
    "FockOperator",
    "GaussianState",
    "HypothesisPair",
    "ModePhotonNumbers",
    "NumericalError",
    "OracleStates",
    "OverlapResult",
    "RootBracketError",
    "ScenarioParams",
    "SymplecticMatrix",
    "TmsAsymptotic",
    "TruncationError",
    "TruncationReport",
    "TssAsymptotic",
    "UnphysicalStateError",
    "WilliamsonDecomposition",
    "apply_symplectic",
    "build_hypotheses",
    "coherent_qb_bound",
    "covariance_of",
    "critical_r1",
    "g_p",
    "gamma1",
    "gamma2",
    "helstrom_error_single_copy",
    "lambda_p",
    "log_negativity",
    "lossy_thermal_channel",
    "oracle_hypotheses",
    "partial_transpose",
    "q_s",
    "q_s_numeric",
    "qb_bound",
    "qc_bound",
    "single_mode_squeeze_symplectic",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_state",
    "tms_hypotheses",
    "tms_probe",
    "tms_qb_asymptotic",
    "tmsv_covariance",
    "tmsv_hypotheses",
    "tmsv_ket",
    "tss_hypotheses",
    "tss_probe",
    "tss_qb_asymptotic",
    "two_mode_squeeze_symplectic",
    "williamson",
]
