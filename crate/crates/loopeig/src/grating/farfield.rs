//! Complex transmission of the thin grating and far-field Fraunhofer
//! diffraction spectra in one and two dimensions.

use ndarray::Array2;
use rayon::prelude::*;

use super::modulation::{GratingGeometry, SpatialModulation};
use super::profile::{params_at, susceptibility_profile_with_tuning, ProbeTuning, SusceptibilityProfile};
use super::GratingError;
use crate::atomic::{chi_kappa, AtomFieldParams, Level, MediumParams, SusceptibilityMode};
use crate::C64;

/// Gain exponent beyond which the transmission is treated as runaway.
pub const GAIN_OVERFLOW_LIMIT: f64 = 20.0;

/// Pointwise complex transmission `T(x) = e^{−α(x)}·e^{iβ(x)}` of the thin
/// medium.
pub fn transmission(profile: &SusceptibilityProfile) -> Result<Vec<C64>, GratingError> {
    for (i, &a) in profile.alpha.iter().enumerate() {
        if -a > GAIN_OVERFLOW_LIMIT {
            return Err(GratingError::OverflowGuard {
                x: profile.x[i],
                gain_exponent: -a,
            });
        }
    }
    Ok(profile
        .alpha
        .iter()
        .zip(&profile.beta)
        .map(|(&a, &b)| C64::from_polar((-a).exp(), b))
        .collect())
}

/// Single-period far-field amplitude
/// `E(θ) = ∫_{−1/2}^{1/2} T(x)·e^{−i2πxR sinθ} dx`
/// by periodic trapezoidal (midpoint-equivalent) quadrature on the uniform
/// sample grid.
pub fn farfield_amplitude(t: &[C64], sin_theta: f64, geometry: &GratingGeometry) -> C64 {
    let n = t.len();
    let r = geometry.period_ratio;
    // x_i = −1/2 + i/N; kernel evaluated by stable rotation recurrence.
    let phase0 = C64::from_polar(1.0, std::f64::consts::TAU * 0.5 * r * sin_theta);
    let step = C64::from_polar(1.0, -std::f64::consts::TAU * r * sin_theta / n as f64);
    let mut kernel = phase0;
    let mut acc = C64::new(0.0, 0.0);
    for (i, ti) in t.iter().enumerate() {
        acc += ti * kernel;
        kernel *= step;
        // Renormalize the rotation occasionally to keep |kernel| = 1.
        if i % 1024 == 1023 {
            kernel /= kernel.norm();
        }
    }
    acc / n as f64
}

/// `sin²(MπRs) / (M² sin²(πRs))` with its removable singularities (value 1 at
/// every diffraction order) evaluated analytically.
pub fn interference_factor(sin_theta: f64, geometry: &GratingGeometry) -> f64 {
    let u = std::f64::consts::PI * geometry.period_ratio * sin_theta;
    let m = geometry.beam_periods;
    let s = u.sin();
    // Near u = kπ both numerator and denominator vanish; the limit is the
    // single-slit normalization.
    if s.abs() < 1e-9 {
        return 1.0;
    }
    let num = (m * u).sin();
    (num * num) / (m * m * s * s)
}

/// Intensity at one diffraction order (exact angular position).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderIntensity {
    pub n: i32,
    pub sin_theta: f64,
    pub intensity: f64,
}

/// Far-field intensity over the angular grid plus the per-order table.
///
/// Intensities are normalized so an empty grating (T ≡ 1) has unit central
/// peak.
#[derive(Debug, Clone)]
pub struct DiffractionSpectrum {
    pub sin_theta: Vec<f64>,
    pub intensity: Vec<f64>,
    pub orders: Vec<OrderIntensity>,
}

impl DiffractionSpectrum {
    pub fn order(&self, n: i32) -> Option<&OrderIntensity> {
        self.orders.iter().find(|o| o.n == n)
    }

    /// Sum of the order-table intensities excluding the zeroth order.
    pub fn diffracted_energy(&self) -> f64 {
        self.orders
            .iter()
            .filter(|o| o.n != 0)
            .map(|o| o.intensity)
            .sum()
    }
}

/// Far-field intensity spectrum `I(θ) = |E(θ)|²·sin²(MπR sinθ)/(M² sin²(πR sinθ))`.
pub fn intensity_spectrum(t: &[C64], geometry: &GratingGeometry) -> DiffractionSpectrum {
    let sin_theta = geometry.sin_theta_grid();
    let intensity: Vec<f64> = sin_theta
        .par_iter()
        .map(|&s| {
            let e = farfield_amplitude(t, s, geometry);
            e.norm_sqr() * interference_factor(s, geometry)
        })
        .collect();
    let orders = geometry
        .order_range()
        .map(|n| {
            let s = n as f64 / geometry.period_ratio;
            let e = farfield_amplitude(t, s, geometry);
            OrderIntensity {
                n,
                sin_theta: s,
                intensity: e.norm_sqr(),
            }
        })
        .collect();
    DiffractionSpectrum {
        sin_theta,
        intensity,
        orders,
    }
}

/// Two-dimensional far-field intensity map.
#[derive(Debug, Clone)]
pub struct DiffractionMap2d {
    pub sin_theta_x: Vec<f64>,
    pub sin_theta_y: Vec<f64>,
    /// `intensity[(ix, iy)]` at (sinθ_x[ix], sinθ_y[iy]).
    pub intensity: Array2<f64>,
}

/// Spatial samples per axis used by the 2D map.
pub fn samples_2d(geometry: &GratingGeometry) -> usize {
    geometry.n_samples.min(512)
}

/// Angular samples per axis used by the 2D map.
pub fn angular_samples_2d(geometry: &GratingGeometry) -> usize {
    geometry.n_theta.min(241)
}

/// Far-field intensity of a two-dimensionally modulated grating with the
/// additive detuning `Δ_c(x, y) = Δ_c0·sin-term(x) + Δ_cy·(sin|cos)-term(y)`.
///
/// The transmission is evaluated on an x–y grid and Fourier-transformed along
/// both axes; the M-slit interference factor applies per axis. With the y
/// modulation off, the θ_y = 0 slice reproduces the 1D spectrum.
pub fn farfield_2d(
    params: &AtomFieldParams,
    medium: &MediumParams,
    modulation: &SpatialModulation,
    geometry: &GratingGeometry,
    tuning: ProbeTuning,
) -> Result<DiffractionMap2d, GratingError> {
    modulation.validate()?;
    geometry.validate()?;
    let n = samples_2d(geometry);
    if n < 256 {
        return Err(GratingError::GridTooCoarse { n });
    }
    let kappa = chi_kappa(medium);
    let kp_l = medium.kp_l();
    let grid: Vec<f64> = (0..n).map(|i| -0.5 + i as f64 / n as f64).collect();

    // Transmission row by row (parallel over x).
    let rows: Result<Vec<Vec<C64>>, GratingError> = grid
        .par_iter()
        .map(|&x| {
            let dx = modulation.value_x(x);
            grid.iter()
                .map(|&y| {
                    let local = params_at(params, dx + modulation.value_y(y), tuning);
                    let rho_eg = crate::atomic::steady_rho_for_profile(&local)
                        .map(|rho| rho.coherence(Level::E, Level::G))
                        .map_err(|source| GratingError::SampleFailure { x, source })?;
                    let chi = kappa * rho_eg / local.omega_p;
                    let alpha = kp_l * chi.im;
                    if -alpha > GAIN_OVERFLOW_LIMIT {
                        return Err(GratingError::OverflowGuard {
                            x,
                            gain_exponent: -alpha,
                        });
                    }
                    Ok(C64::from_polar((-alpha).exp(), kp_l * chi.re))
                })
                .collect()
        })
        .collect();
    let rows = rows?;

    let n_theta = angular_samples_2d(geometry);
    let sin_grid: Vec<f64> = (0..n_theta)
        .map(|j| -1.0 + 2.0 * j as f64 / (n_theta - 1) as f64)
        .collect();

    // E(sx, sy) = wx(sx)ᵀ · T · wy(sy), factorized into two passes.
    let kernel = |s: f64| -> Vec<C64> {
        grid.iter()
            .map(|&u| C64::from_polar(
                1.0,
                -std::f64::consts::TAU * u * geometry.period_ratio * s,
            ))
            .collect()
    };

    // First pass: partial[(jx, iy)] = Σ_ix wx[ix]·T[ix][iy] / n.
    let partial: Vec<Vec<C64>> = sin_grid
        .par_iter()
        .map(|&sx| {
            let wx = kernel(sx);
            let mut row = vec![C64::new(0.0, 0.0); n];
            for (ix, t_row) in rows.iter().enumerate() {
                let w = wx[ix];
                for (iy, t) in t_row.iter().enumerate() {
                    row[iy] += w * t;
                }
            }
            row.iter_mut().for_each(|v| *v /= n as f64);
            row
        })
        .collect();

    let mut intensity = Array2::<f64>::zeros((n_theta, n_theta));
    let fx: Vec<f64> = sin_grid
        .iter()
        .map(|&s| interference_factor(s, geometry))
        .collect();
    for (jx, part_row) in partial.iter().enumerate() {
        for (jy, &sy) in sin_grid.iter().enumerate() {
            let wy = kernel(sy);
            let mut e = C64::new(0.0, 0.0);
            for (iy, w) in wy.iter().enumerate() {
                e += part_row[iy] * w;
            }
            e /= n as f64;
            intensity[(jx, jy)] = e.norm_sqr() * fx[jx] * fx[jy];
        }
    }

    Ok(DiffractionMap2d {
        sin_theta_x: sin_grid.clone(),
        sin_theta_y: sin_grid,
        intensity,
    })
}

/// Convenience pipeline: profile → transmission → spectrum.
pub fn diffraction_spectrum(
    params: &AtomFieldParams,
    medium: &MediumParams,
    modulation: &SpatialModulation,
    geometry: &GratingGeometry,
    tuning: ProbeTuning,
) -> Result<(SusceptibilityProfile, DiffractionSpectrum), GratingError> {
    let profile = susceptibility_profile_with_tuning(
        params,
        medium,
        modulation,
        geometry,
        SusceptibilityMode::Exact,
        tuning,
    )?;
    let t = transmission(&profile)?;
    Ok((profile, intensity_spectrum(&t, geometry)))
}
