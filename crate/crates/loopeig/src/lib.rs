//! Simulation of electromagnetically induced gratings (EIGs) written into a
//! four-level loop-driven cold-atom medium.
//!
//! A probe, two optical coupling fields and a microwave field drive the four
//! levels in a closed interaction loop, so the optical response depends on the
//! relative loop phase of the fields. Periodically modulating one coupling
//! detuning along `x` imprints a complex susceptibility grating whose real and
//! imaginary parts acquire definite spatial parity: PT-symmetric
//! (`n(x) = n*(-x)`) or PT-antisymmetric (`n(x) = -n*(-x)`) profiles selected
//! purely by the loop phase. The far-field diffraction of such gratings is
//! strongly one-sided.
//!
//! The crate is organized around four building blocks:
//!
//! * [`atomic`] — density-matrix steady states of the driven four-level atom,
//!   probe susceptibility, and loop-phase symmetry classification;
//! * [`grating`] — spatial susceptibility profiles under periodic detuning
//!   modulation, complex transmission functions, and far-field Fraunhofer
//!   spectra in 1D and 2D;
//! * [`asymmetry`] — the scattering expansion of the diffraction amplitudes,
//!   intensity contrast ratios, spatial Kramers-Kronig diagnostics, and
//!   robustness sweeps;
//! * [`scenario`] — reproducible named scenarios with plain-text configs,
//!   deterministic data export and run manifests.
//!
//! Units: all rates, Rabi amplitudes and detunings are stored in units of
//! 2π·MHz; lengths in μm; wavelengths in nm. Times are measured in the
//! inverse rate unit 1/(2π·MHz). Conversions happen only at I/O boundaries.

pub mod asymmetry;
pub mod atomic;
pub mod grating;
pub mod scenario;
pub(crate) mod linalg;

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
