//! Atomic response of the loop-driven four-level medium: master-equation
//! generator, exact and perturbative steady states, probe susceptibility and
//! loop-phase symmetry classification.

mod generator;
mod params;
mod response;
mod steady;
mod symmetry;

pub use generator::{build_generator, Level, LinearGenerator};
pub use params::{AtomFieldParams, DephasingMap, LoopPhase, MediumParams, TAU};
pub use response::{
    appendix_coefficients, chi_kappa, coherence_perturbative, susceptibility,
    AppendixCoefficients, PerturbativeCoherence, SusceptibilityMode,
};
pub use steady::{
    evolve, steady_state_exact, DensityMatrix, DensityMatrixCheck, SteadyState,
    SteadyStateWarning, GAIN_EIGENVALUE_TOL, STEADY_RESIDUAL_TOL,
};
pub use symmetry::{
    classify_symmetry, verify_parity_frequency, FoldResiduals, Parity, ParityReport,
    SymmetryClass, SymmetryKind, PARITY_THRESHOLD,
};

pub(crate) use steady::steady_vec;

/// Crate-internal fast path for profile sampling.
pub(crate) fn steady_rho_for_profile(
    params: &AtomFieldParams,
) -> Result<DensityMatrix, AtomicError> {
    let gen = generator::build_generator(params);
    steady::steady_rho_fast(&gen)
}

/// Errors from the atomic-response solvers.
#[derive(Debug, thiserror::Error)]
pub enum AtomicError {
    #[error("invalid parameters: {what}")]
    InvalidParams { what: String },
    #[error("steady-state kernel is {kernel_dim}-dimensional, expected 1")]
    DegenerateSteadyState { kernel_dim: usize },
    #[error("integration step too large: dt·‖G‖ = {dt_norm:.3}, need < 0.1")]
    StepTooLarge { dt_norm: f64 },
    #[error(
        "probe amplitude {omega_p} exceeds the perturbative bound 0.01·Ω_c = {bound} (pass override to force)"
    )]
    PerturbativeBound { omega_p: f64, bound: f64 },
    #[error("effective relaxation rate |R| = {r_norm:.3e} too close to zero")]
    ResonanceSingularity { r_norm: f64 },
    #[error("appendix reduction assumes equal dephasings, got γ_ge={ge}, γ_me={me}, γ_mb={mb}")]
    AssumptionViolated { ge: f64, me: f64, mb: f64 },
    #[error("parity inconclusive: residuals re=({re_even:.2e},{re_odd:.2e}) im=({im_even:.2e},{im_odd:.2e})")]
    InconclusiveParity {
        re_even: f64,
        re_odd: f64,
        im_even: f64,
        im_odd: f64,
    },
    #[error("detuning grid is not symmetric about zero")]
    AsymmetricGrid,
    #[error("numerical failure: {what}")]
    NumericalFailure { what: String },
    #[error(transparent)]
    Lapack(#[from] crate::linalg::LapackError),
}
