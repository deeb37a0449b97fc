//! Scattering-expansion analysis of asymmetric diffraction: contrast ratios,
//! the pure-loss perfect-lopsidedness chain, spatial Kramers-Kronig
//! diagnostics, and robustness sweeps.

mod kk;
mod lopsided;
mod scattering;
mod sweep;

pub use kk::{hilbert, kk_residual, KkResidual};
pub use lopsided::{
    apt_lopsided_check, eta_expansion_projected, symmetry_products, AptChainStep,
    AptLopsidedReport, SymmetryProducts,
};
pub use scattering::{
    eta_exact, eta_expansion, expansion_amplitude, expansion_intensities,
    scattering_coefficients, EtaExpansion, ScatteringCoefficients, EXPANSION_REGIME_LIMIT,
};
pub use sweep::{
    robustness_sweep, write_asymmetry_table, OrderContrast, SweepAxis, SweepRow,
};

/// Errors from the asymmetry analysis.
#[derive(Debug, thiserror::Error)]
pub enum AsymmetryError {
    #[error("order ±{n} absent at first-order scattering (f-coefficients underflow)")]
    DegenerateOrder { n: i32 },
    #[error("both orders ±{n} are dark")]
    BothOrdersDark { n: i32 },
    #[error("order {n} is outside the angular range")]
    OrderOffGrid { n: i32 },
    #[error("profile class is {}, operation needs {}", found.label(), needed.label())]
    WrongSymmetryClass {
        found: crate::atomic::SymmetryKind,
        needed: crate::atomic::SymmetryKind,
    },
    #[error("sweep point {axis} = {value}, phi = {phi} failed: {what}")]
    SweepPoint {
        axis: &'static str,
        value: f64,
        phi: f64,
        what: String,
    },
    #[error(transparent)]
    Grating(#[from] crate::grating::GratingError),
    #[error(transparent)]
    Atomic(#[from] crate::atomic::AtomicError),
}
