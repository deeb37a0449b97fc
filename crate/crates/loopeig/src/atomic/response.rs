//! Probe-coherence perturbation theory, the complex probe susceptibility and
//! the reduced polynomial coefficients of its real/imaginary decomposition.

use ndarray::Array1;
use std::sync::OnceLock;

use super::generator::{build_generator, vec_idx, DriveTopology, D_TOPOLOGY};
use super::params::{AtomFieldParams, MediumParams};
use super::steady::steady_state_exact;
use super::{steady_vec, AtomicError};
use crate::C64;

/// Zeroth- and first-order pieces of the probe coherence ρ_eg.
///
/// The steady coherence is ρ_eg ≈ `rho_eg_0` + `rho_eg_1`·Ω_p: the zeroth
/// order is the loop-induced coherence present without any probe, the first
/// order is the probe linear response. Both are exact coefficients of the
/// steady-state expansion in Ω_p, obtained by solving the probe-free
/// generator and its first-order correction; `rho_eg_0` carries the loop
/// factor e^{−iΦ}.
#[derive(Debug, Clone, Copy)]
pub struct PerturbativeCoherence {
    pub rho_eg_0: C64,
    pub rho_eg_1: C64,
    /// Probe-free populations used by downstream reductions.
    pub rho_gg_0: f64,
    pub rho_mm_0: f64,
    pub rho_ee_0: f64,
}

/// Effective relaxation denominators γ − iΔ entering the reduced formulas,
/// with the rotating-frame detuning assignments (δ_p, δ_p−Δ_c,
/// δ_p−Δ_c+δ_d).
fn relaxation_denominators(params: &AtomFieldParams) -> [C64; 3] {
    let d2 = params.delta_p - params.delta_c;
    let d3 = d2 + params.delta_d;
    [
        C64::new(params.dephasing.ge, -params.delta_p),
        C64::new(params.dephasing.gm, -d2),
        C64::new(params.dephasing.gb, -d3),
    ]
}

/// Exact perturbative expansion of the steady probe coherence in Ω_p.
///
/// Splits the generator as G = G₀ + Ω_p·G_p (it is linear in the probe
/// amplitude), solves G₀ for the probe-free steady state and the constrained
/// first-order correction G₀·v₁ = −G_p·v₀ with Tr v₁ = 0.
pub fn coherence_perturbative(
    params: &AtomFieldParams,
    override_bound: bool,
) -> Result<PerturbativeCoherence, AtomicError> {
    params.validate()?;
    if !override_bound && !params.perturbative_bound_ok() {
        return Err(AtomicError::PerturbativeBound {
            omega_p: params.omega_p,
            bound: 0.01 * params.omega_c,
        });
    }
    for r in relaxation_denominators(params) {
        if r.norm() < 1e-12 {
            return Err(AtomicError::ResonanceSingularity { r_norm: r.norm() });
        }
    }

    let mut probe_free = params.clone();
    probe_free.omega_p = 0.0;
    let g0 = build_generator(&probe_free);
    let v0 = steady_vec(&g0)?;

    let mut probe_unit = params.clone();
    probe_unit.omega_p = 1.0;
    let g_probe = build_generator(&probe_unit).matrix - &g0.matrix;

    // First order: G₀ v₁ = −G_p v₀ on the trace-zero slice.
    let rhs_full = g_probe.dot(&v0);
    let mut a = g0.matrix.clone();
    let mut b: Vec<C64> = rhs_full.iter().map(|z| -z).collect();
    for j in 0..16 {
        a[(0, j)] = C64::new(0.0, 0.0);
    }
    for mu in 0..4 {
        a[(0, vec_idx(mu, mu))] = C64::new(1.0, 0.0);
    }
    b[0] = C64::new(0.0, 0.0);
    let v1 = Array1::from(crate::linalg::solve(a.view(), &b)?);

    let eg = vec_idx(1, 0);
    Ok(PerturbativeCoherence {
        rho_eg_0: v0[eg],
        rho_eg_1: v1[eg],
        rho_gg_0: v0[vec_idx(0, 0)].re,
        rho_mm_0: v0[vec_idx(2, 2)].re,
        rho_ee_0: v0[vec_idx(1, 1)].re,
    })
}

/// Which solver backs a susceptibility evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusceptibilityMode {
    /// Full steady state at the actual probe amplitude.
    Exact,
    /// Zeroth- plus first-order coherence.
    Perturbative,
}

/// Grid used once to calibrate the susceptibility scale at default
/// parameters.
fn default_response_peak() -> f64 {
    static PEAK: OnceLock<f64> = OnceLock::new();
    *PEAK.get_or_init(|| {
        let base = AtomFieldParams::default();
        let mut peak = 0.0f64;
        let n = 801;
        for k in 0..n {
            let delta = -10.0 + 20.0 * (k as f64) / ((n - 1) as f64);
            let params = AtomFieldParams {
                delta_p: delta,
                ..base.clone()
            };
            let ss = steady_state_exact(&params).expect("default-parameter steady state");
            let r = ss.rho.coherence(super::Level::E, super::Level::G);
            peak = peak.max((r.im / params.omega_p).abs());
        }
        peak
    })
}

/// Susceptibility prefactor κ so that χ_p = κ·ρ_eg/Ω_p.
///
/// Calibrated so the default atomic response at default medium parameters
/// peaks at the optical depth `chi_scale`: k_p·max|Im χ_p|·L = chi_scale.
/// Scales linearly with atomic density.
pub fn chi_kappa(medium: &MediumParams) -> f64 {
    let default_medium = MediumParams::default();
    let peak = default_response_peak();
    medium.chi_scale * (medium.density_n / default_medium.density_n)
        / (default_medium.kp_l() * peak)
}

/// Complex probe susceptibility χ_p.
///
/// `Im χ_p > 0` is absorption, `Im χ_p < 0` gain.
pub fn susceptibility(
    params: &AtomFieldParams,
    medium: &MediumParams,
    mode: SusceptibilityMode,
) -> Result<C64, AtomicError> {
    medium.validate()?;
    if params.omega_p <= 0.0 {
        return Err(AtomicError::InvalidParams {
            what: format!("susceptibility needs omega_p > 0, got {}", params.omega_p),
        });
    }
    let kappa = chi_kappa(medium);
    let rho_eg = match mode {
        SusceptibilityMode::Exact => {
            let ss = steady_state_exact(params)?;
            ss.rho.coherence(super::Level::E, super::Level::G)
        }
        SusceptibilityMode::Perturbative => {
            let pc = coherence_perturbative(params, false)?;
            pc.rho_eg_0 + pc.rho_eg_1 * params.omega_p
        }
    };
    Ok(kappa * rho_eg / params.omega_p)
}

/// Reduced real/imaginary coefficients of the probe coherence.
///
/// `rho_eg_0 ≈ e^{−iΦ}(a0 + i·b0)` and `rho_eg_1 ≈ a1 + i·b1` in the regime
/// where the dominant-path reduction applies (equal optical dephasings, weak
/// microwave). The leading detuning powers of the four numerators are
/// recorded in `leading_powers`; they set the parity of each coefficient
/// under δ_p → −δ_p at two-photon resonance.
#[derive(Debug, Clone, Copy)]
pub struct AppendixCoefficients {
    pub a0: f64,
    pub b0: f64,
    pub a1: f64,
    pub b1: f64,
    /// Leading numerator powers (n_A0, n_B0, n_A1, n_B1).
    pub leading_powers: (u8, u8, u8, u8),
}

/// Dominant-path closed-form reduction of the coherence coefficients.
///
/// Requires the common-dephasing assumption γ_ge = γ_me = γ_mb of the
/// polynomial reduction; probe-free populations come from the exact solver.
pub fn appendix_coefficients(params: &AtomFieldParams) -> Result<AppendixCoefficients, AtomicError> {
    params.validate()?;
    // The reduction assumes a common optical dephasing. The printed model
    // also nominally equates the mb rate, but its own defaults set that to
    // half the optical value, so only the pair actually entering the
    // dominant path is enforced.
    let d = &params.dephasing;
    let tol = 1e-9 * d.ge.max(1.0);
    if (d.ge - d.me).abs() > tol {
        return Err(AtomicError::AssumptionViolated {
            ge: d.ge,
            me: d.me,
            mb: d.mb,
        });
    }

    let mut probe_free = params.clone();
    probe_free.omega_p = 0.0;
    let ss = steady_state_exact(&probe_free)?;
    let rho_gg = ss.rho.population(super::Level::G);
    let rho_mm = ss.rho.population(super::Level::M);
    let rho_ee = ss.rho.population(super::Level::E);

    let [r_eg, r_mg, r_bg] = relaxation_denominators(params);
    for r in [r_eg, r_mg, r_bg] {
        if r.norm() < 1e-12 {
            return Err(AtomicError::ResonanceSingularity { r_norm: r.norm() });
        }
    }
    let (w, c, dd) = (params.omega_m, params.omega_c, params.omega_d);
    let pop = C64::new(rho_mm - rho_gg, 0.0);

    let (z0, z1) = match D_TOPOLOGY {
        DriveTopology::EB => {
            // d hangs off e: side chains c²/R_mg and d²/R_bg both load the
            // probe coherence directly.
            let denom = r_eg + c * c / r_mg + dd * dd / r_bg;
            let z0 = (w * c) * pop / (r_mg * denom);
            let z1 = C64::new(0.0, rho_gg - rho_ee) / denom;
            (z0, z1)
        }
        DriveTopology::MB => {
            // d hangs off m: nested chain R_mg + d²/R_bg.
            let chain = r_mg + dd * dd / r_bg;
            let denom = r_eg + c * c / chain;
            let z0 = (w * c) * pop / (chain * denom);
            let z1 = C64::new(0.0, rho_gg - rho_ee) / denom;
            (z0, z1)
        }
    };

    Ok(AppendixCoefficients {
        a0: z0.re,
        b0: z0.im,
        a1: z1.re,
        b1: z1.im,
        leading_powers: (2, 1, 3, 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atomic::Level;

    #[test]
    fn zeroth_order_vanishes_without_microwave() {
        let params = AtomFieldParams {
            omega_m: 0.0,
            ..Default::default()
        };
        let pc = coherence_perturbative(&params, false).unwrap();
        assert!(pc.rho_eg_0.norm() < 1e-12);
    }

    #[test]
    fn zeroth_order_vanishes_without_coupling() {
        let params = AtomFieldParams {
            omega_c: 0.0,
            omega_p: 0.0,
            ..Default::default()
        };
        // Bound is trivially fine with Ω_p = 0 but Ω_c = 0 breaks it; force.
        let pc = coherence_perturbative(&params, true).unwrap();
        assert!(pc.rho_eg_0.norm() < 1e-12);
    }

    #[test]
    fn open_loop_first_order_is_dressed_two_level() {
        // Ω_c = 0 cuts the loop: the first-order response must be the bare
        // two-level response weighted by the (d- and microwave-dressed)
        // probe-free populations, independent of Φ.
        let for_phi = |phi: f64| {
            let params = AtomFieldParams {
                omega_c: 0.0,
                delta_p: 1.3,
                ..Default::default()
            }
            .with_loop_phase(phi);
            coherence_perturbative(&params, true).unwrap()
        };
        let a = for_phi(0.0);
        let b = for_phi(1.0);
        assert!((a.rho_eg_1 - b.rho_eg_1).norm() < 1e-10);
    }

    #[test]
    fn perturbative_bound_enforced() {
        let params = AtomFieldParams {
            omega_p: 0.2,
            ..Default::default()
        };
        let err = coherence_perturbative(&params, false).unwrap_err();
        assert!(matches!(err, AtomicError::PerturbativeBound { .. }));
        assert!(coherence_perturbative(&params, true).is_ok());
    }

    fn finite_difference_error(delta: f64, omega_p: f64) -> f64 {
        let params = AtomFieldParams {
            delta_p: delta,
            omega_p,
            ..Default::default()
        };
        let pc = coherence_perturbative(&params, false).unwrap();
        let with_probe = steady_state_exact(&params).unwrap();
        let mut p0 = params.clone();
        p0.omega_p = 0.0;
        let without_probe = steady_state_exact(&p0).unwrap();
        let fd = with_probe.rho.coherence(Level::E, Level::G)
            - without_probe.rho.coherence(Level::E, Level::G);
        let predicted = pc.rho_eg_1 * params.omega_p;
        (fd - predicted).norm() / predicted.norm()
    }

    #[test]
    fn first_order_matches_finite_difference() {
        // [ρ_eg(Ω_p) − ρ_eg(0)] ≈ Ω_p·ρ_eg^(1). The residual is the genuine
        // second-order response; at the default probe it stays around the
        // percent level over the detuning span and shrinks linearly with
        // Ω_p, which pins the first-order coefficient as exact.
        for k in 0..9 {
            let delta = -10.0 + 20.0 * (k as f64) / 8.0;
            let rel = finite_difference_error(delta, 0.01);
            assert!(rel < 0.02, "delta_p = {delta}: relative error {rel:.3e}");
        }
        // Linear-in-Ω_p scaling of the residual at the worst wing point.
        let e_full = finite_difference_error(-7.5, 0.01);
        let e_half = finite_difference_error(-7.5, 0.005);
        let ratio = e_full / e_half;
        assert!(
            (ratio - 2.0).abs() < 0.3,
            "second-order residual should halve with the probe: ratio {ratio:.3}"
        );
        assert!(finite_difference_error(-7.5, 0.002) < 0.005);
    }

    #[test]
    fn susceptibility_two_level_limit() {
        // Ω_m = Ω_c = 0 at δ_p = 0: maximal absorption, zero dispersion.
        let medium = MediumParams::default();
        let resonant = AtomFieldParams {
            omega_c: 0.0,
            omega_m: 0.0,
            omega_d: 0.0,
            ..Default::default()
        };
        let chi0 = susceptibility(&resonant, &medium, SusceptibilityMode::Exact).unwrap();
        assert!(chi0.im > 0.0);
        assert!(chi0.re.abs() < 1e-12 * chi0.im);
        for delta in [0.5, 2.0, -3.0] {
            let detuned = AtomFieldParams {
                delta_p: delta,
                ..resonant.clone()
            };
            let chi = susceptibility(&detuned, &medium, SusceptibilityMode::Exact).unwrap();
            assert!(chi.im < chi0.im);
            assert!(chi.im > 0.0);
        }
    }

    #[test]
    fn susceptibility_modes_agree_for_weak_probe() {
        let medium = MediumParams::default();
        let params = AtomFieldParams {
            delta_p: 2.0,
            ..Default::default()
        };
        let e = susceptibility(&params, &medium, SusceptibilityMode::Exact).unwrap();
        let p = susceptibility(&params, &medium, SusceptibilityMode::Perturbative).unwrap();
        assert!((e - p).norm() / e.norm() < 1e-3);
    }

    #[test]
    fn default_calibration_hits_requested_peak_depth() {
        let medium = MediumParams::default();
        let kappa = chi_kappa(&medium);
        let peak = default_response_peak();
        assert!((medium.kp_l() * kappa * peak - medium.chi_scale).abs() < 1e-12);
    }

    #[test]
    fn appendix_b0_vanishes_at_line_center() {
        let params = AtomFieldParams::default();
        let coeffs = appendix_coefficients(&params).unwrap();
        assert!(coeffs.b0.abs() < 1e-12);
        assert_eq!(coeffs.leading_powers, (2, 1, 3, 2));
    }

    #[test]
    fn appendix_parities_under_detuning_flip() {
        let at = |delta: f64| {
            appendix_coefficients(&AtomFieldParams {
                delta_p: delta,
                ..Default::default()
            })
            .unwrap()
        };
        let plus = at(2.0);
        let minus = at(-2.0);
        // a0 even, b0 odd.
        assert!((plus.a0 - minus.a0).abs() < 1e-10 * plus.a0.abs());
        assert!((plus.b0 + minus.b0).abs() < 1e-10 * plus.b0.abs().max(1e-30));
        // First order: a1 odd, b1 even, up to the Ω_p-free reduction.
        assert!((plus.a1 + minus.a1).abs() < 1e-10 * plus.a1.abs().max(1e-30));
        assert!((plus.b1 - minus.b1).abs() < 1e-10 * plus.b1.abs());
    }

    #[test]
    fn appendix_requires_common_dephasing() {
        let mut params = AtomFieldParams::default();
        params.dephasing.me = 1.0;
        let err = appendix_coefficients(&params).unwrap_err();
        assert!(matches!(err, AtomicError::AssumptionViolated { .. }));
    }

    #[test]
    fn appendix_tracks_exact_zeroth_coherence() {
        // At two-photon resonance (Δ_c = δ_p) the dominant-path reduction
        // approximates the exact zeroth coherence.
        let delta = 2.0;
        let params = AtomFieldParams {
            delta_p: delta,
            delta_c: delta,
            ..Default::default()
        };
        let coeffs = appendix_coefficients(&params).unwrap();
        let pc = coherence_perturbative(&params, false).unwrap();
        let phi = params.loop_phase().radians();
        let reduced = C64::from_polar(1.0, -phi) * C64::new(coeffs.a0, coeffs.b0);
        let rel = (reduced - pc.rho_eg_0).norm() / pc.rho_eg_0.norm();
        assert!(rel < 0.15, "relative deviation {rel:.3}");
    }
}
