//! Scattering expansion of the far-field amplitudes and the intensity
//! contrast ratios it predicts.
//!
//! The diffraction amplitude of order n is expanded in scattering orders of
//! the grating's absorption exponent α and phase exponent β with the kernels
//! `γ_n(x) = 2nπx`. First-order scattering (the f coefficients) produces
//! symmetric ±n intensities; cross terms with the second-order g
//! coefficients are what skew the pattern.

use super::AsymmetryError;
use crate::grating::{DiffractionSpectrum, SusceptibilityProfile};
use crate::C64;

/// Modulation magnitude above which the expansion is outside its quoted
/// validity and the coefficients carry a regime warning.
pub const EXPANSION_REGIME_LIMIT: f64 = 0.3;

/// The four scattering integrals of one diffraction order.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringCoefficients {
    pub n: i32,
    pub f_prime: f64,
    pub f_dprime: f64,
    pub g_prime: f64,
    pub g_dprime: f64,
    /// Formal scattering-strength factor; fixed to 1 except in the
    /// first-order-limit (Friedel) studies.
    pub epsilon: f64,
    /// Set when max(|α|, |β|) exceeds the expansion regime.
    pub regime_warning: bool,
}

/// Periodic quadrature: mean of `f` over the uniform sample grid.
fn periodic_mean(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    values.sum::<f64>() / n as f64
}

/// Evaluate the four scattering integrals for order `n` with weight
/// `1 + α + α²/2` and kernels `β sin γ_n`, `β cos γ_n`,
/// `(β² − 2)/2 · cos γ_n`, `(β² − 2)/2 · sin γ_n`.
pub fn scattering_coefficients(profile: &SusceptibilityProfile, n: i32) -> ScatteringCoefficients {
    let len = profile.x.len();
    let gamma = |x: f64| std::f64::consts::TAU * n as f64 * x;
    let w = |i: usize| {
        let a = profile.alpha[i];
        1.0 + a + 0.5 * a * a
    };
    let f_prime = periodic_mean(
        (0..len).map(|i| w(i) * profile.beta[i] * gamma(profile.x[i]).sin()),
        len,
    );
    let f_dprime = periodic_mean(
        (0..len).map(|i| w(i) * profile.beta[i] * gamma(profile.x[i]).cos()),
        len,
    );
    let g_prime = periodic_mean(
        (0..len).map(|i| {
            let b = profile.beta[i];
            w(i) * 0.5 * (b * b - 2.0) * gamma(profile.x[i]).cos()
        }),
        len,
    );
    let g_dprime = periodic_mean(
        (0..len).map(|i| {
            let b = profile.beta[i];
            w(i) * 0.5 * (b * b - 2.0) * gamma(profile.x[i]).sin()
        }),
        len,
    );
    let max_mod = profile
        .alpha
        .iter()
        .chain(&profile.beta)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    ScatteringCoefficients {
        n,
        f_prime,
        f_dprime,
        g_prime,
        g_dprime,
        epsilon: 1.0,
        regime_warning: max_mod > EXPANSION_REGIME_LIMIT,
    }
}

/// Truncated amplitude `E_n = [f′ε − g′ε²/2] + i[f″ε + g″ε²/2]`.
pub fn expansion_amplitude(coeffs: &ScatteringCoefficients) -> C64 {
    let e = coeffs.epsilon;
    C64::new(
        coeffs.f_prime * e - 0.5 * coeffs.g_prime * e * e,
        coeffs.f_dprime * e + 0.5 * coeffs.g_dprime * e * e,
    )
}

/// Intensities of the ±n orders from the truncated amplitudes:
/// `I_{±n} = |f′ε ∓ g′ε²/2|² + |f″ε ± g″ε²/2|²`.
pub fn expansion_intensities(coeffs: &ScatteringCoefficients) -> (f64, f64) {
    let e = coeffs.epsilon;
    let i_plus = (coeffs.f_prime * e - 0.5 * coeffs.g_prime * e * e).powi(2)
        + (coeffs.f_dprime * e + 0.5 * coeffs.g_dprime * e * e).powi(2);
    let i_minus = (coeffs.f_prime * e + 0.5 * coeffs.g_prime * e * e).powi(2)
        + (coeffs.f_dprime * e - 0.5 * coeffs.g_dprime * e * e).powi(2);
    (i_plus, i_minus)
}

/// Contrast ratio of the expansion together with its clamp diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct EtaExpansion {
    pub value: f64,
    /// The first-order formula exceeded 1 and was clamped.
    pub clamped: bool,
}

/// Contrast ratio `η_n = |f′g′ − f″g″| / [(f′)² + (f″)²] · ε_n`, clamped to
/// [0, 1] with the clamp reported.
pub fn eta_expansion(coeffs: &ScatteringCoefficients) -> Result<EtaExpansion, AsymmetryError> {
    let denom = coeffs.f_prime.powi(2) + coeffs.f_dprime.powi(2);
    if denom < 1e-30 {
        return Err(AsymmetryError::DegenerateOrder { n: coeffs.n });
    }
    let raw = (coeffs.f_prime * coeffs.g_prime - coeffs.f_dprime * coeffs.g_dprime).abs() / denom
        * coeffs.epsilon;
    Ok(EtaExpansion {
        value: raw.min(1.0),
        clamped: raw > 1.0,
    })
}

/// Exact contrast ratio `η_n = |(I_n − I_{−n})/(I_n + I_{−n})|` from the
/// order table of a computed spectrum.
pub fn eta_exact(spectrum: &DiffractionSpectrum, n: i32) -> Result<f64, AsymmetryError> {
    let plus = spectrum
        .order(n)
        .ok_or(AsymmetryError::OrderOffGrid { n })?
        .intensity;
    let minus = spectrum
        .order(-n)
        .ok_or(AsymmetryError::OrderOffGrid { n: -n })?
        .intensity;
    if plus + minus < 1e-15 {
        return Err(AsymmetryError::BothOrdersDark { n });
    }
    Ok(((plus - minus) / (plus + minus)).abs())
}
