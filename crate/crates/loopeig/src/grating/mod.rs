//! Grating engine: spatial susceptibility profiles under periodic detuning
//! modulation, complex transmission, far-field Fraunhofer diffraction.

mod export;
mod farfield;
mod modulation;
mod profile;

pub use export::{write_profile_table, write_spectrum_table};
pub use farfield::{
    angular_samples_2d, diffraction_spectrum, farfield_2d, farfield_amplitude,
    intensity_spectrum, interference_factor, samples_2d, transmission, DiffractionMap2d,
    DiffractionSpectrum, OrderIntensity, GAIN_OVERFLOW_LIMIT,
};
pub use modulation::{detuning_profile, GratingGeometry, SpatialModulation, YModulation};
pub use profile::{
    profile_matches_loop_phase, susceptibility_profile, susceptibility_profile_with_tuning,
    ProbeTuning, ProfileParity, SusceptibilityProfile, PROFILE_PARITY_TOL,
};


/// Errors from the grating engine.
#[derive(Debug, thiserror::Error)]
pub enum GratingError {
    #[error("invalid grating geometry or modulation: {what}")]
    InvalidGeometry { what: String },
    #[error("susceptibility sample at x = {x} failed: {source}")]
    SampleFailure {
        x: f64,
        source: crate::atomic::AtomicError,
    },
    #[error("runaway gain: -alpha = {gain_exponent:.2} > 20 at x = {x}")]
    OverflowGuard { x: f64, gain_exponent: f64 },
    #[error("2D grid too coarse: {n} samples per period, need >= 256")]
    GridTooCoarse { n: usize },
    #[error(transparent)]
    Atomic(#[from] crate::atomic::AtomicError),
}
