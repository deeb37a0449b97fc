//! Full-pipeline robustness sweeps over drive amplitudes and loop phases.

use std::io::Write;

use super::scattering::{eta_exact, eta_expansion, scattering_coefficients};
use super::AsymmetryError;
use crate::atomic::{AtomFieldParams, MediumParams, SusceptibilityMode, SymmetryClass};
use crate::grating::{
    intensity_spectrum, susceptibility_profile_with_tuning, transmission, GratingGeometry,
    ProbeTuning, ProfileParity, SpatialModulation,
};

/// Which drive amplitude a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    OmegaC,
    OmegaD,
    OmegaM,
}

impl SweepAxis {
    pub fn label(&self) -> &'static str {
        match self {
            SweepAxis::OmegaC => "omega_c",
            SweepAxis::OmegaD => "omega_d",
            SweepAxis::OmegaM => "omega_m",
        }
    }

    pub fn apply(&self, params: &mut AtomFieldParams, value: f64) {
        match self {
            SweepAxis::OmegaC => params.omega_c = value,
            SweepAxis::OmegaD => params.omega_d = value,
            SweepAxis::OmegaM => params.omega_m = value,
        }
    }
}

/// Per-order contrast data of one sweep point.
#[derive(Debug, Clone, Copy)]
pub struct OrderContrast {
    pub n: i32,
    pub eta_exact: f64,
    pub eta_expansion: f64,
    pub intensity_minus: f64,
    pub intensity_plus: f64,
}

/// One evaluated grid point of a robustness sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub phi: f64,
    pub value: f64,
    pub symmetry: SymmetryClass,
    pub parity: ProfileParity,
    pub orders: [OrderContrast; 3],
}

/// Run the full susceptibility → transmission → diffraction pipeline for
/// every (Φ, value) grid point and collect symmetry classes, parity
/// residuals and contrast ratios for orders 1–3.
#[allow(clippy::too_many_arguments)]
pub fn robustness_sweep(
    base: &AtomFieldParams,
    medium: &MediumParams,
    modulation: &SpatialModulation,
    geometry: &GratingGeometry,
    tuning: ProbeTuning,
    axis: SweepAxis,
    values: &[f64],
    phi_list: &[f64],
) -> Result<Vec<SweepRow>, AsymmetryError> {
    let mut rows = Vec::with_capacity(values.len() * phi_list.len());
    for &phi in phi_list {
        for &value in values {
            let mut params = base.clone().with_loop_phase(phi);
            axis.apply(&mut params, value);
            let row = sweep_point(&params, medium, modulation, geometry, tuning, phi, value)
                .map_err(|source| AsymmetryError::SweepPoint {
                    axis: axis.label(),
                    value,
                    phi,
                    what: source.to_string(),
                })?;
            rows.push(row);
        }
    }
    Ok(rows)
}

fn sweep_point(
    params: &AtomFieldParams,
    medium: &MediumParams,
    modulation: &SpatialModulation,
    geometry: &GratingGeometry,
    tuning: ProbeTuning,
    phi: f64,
    value: f64,
) -> Result<SweepRow, Box<dyn std::error::Error>> {
    let profile = susceptibility_profile_with_tuning(
        params,
        medium,
        modulation,
        geometry,
        SusceptibilityMode::Exact,
        tuning,
    )?;
    let t = transmission(&profile)?;
    let spectrum = intensity_spectrum(&t, geometry);
    let mut orders = [OrderContrast {
        n: 0,
        eta_exact: f64::NAN,
        eta_expansion: f64::NAN,
        intensity_minus: 0.0,
        intensity_plus: 0.0,
    }; 3];
    for (slot, n) in orders.iter_mut().zip(1..=3) {
        let coeffs = scattering_coefficients(&profile, n);
        let expansion = eta_expansion(&coeffs).map(|e| e.value).unwrap_or(f64::NAN);
        let exact = eta_exact(&spectrum, n).unwrap_or(f64::NAN);
        *slot = OrderContrast {
            n,
            eta_exact: exact,
            eta_expansion: expansion,
            intensity_minus: spectrum.order(-n).map(|o| o.intensity).unwrap_or(0.0),
            intensity_plus: spectrum.order(n).map(|o| o.intensity).unwrap_or(0.0),
        };
    }
    Ok(SweepRow {
        phi,
        value,
        symmetry: profile.symmetry,
        parity: profile.parity_residuals,
        orders,
    })
}

fn fmt(v: f64) -> String {
    format!("{v:.11e}")
}

/// Columns: sweep_value, class, eta1_exact, eta1_exp, eta2_exact, eta2_exp,
/// eta3_exact, eta3_exp, I_m1, I_p1, I_m2, I_p2, I_m3, I_p3.
pub fn write_asymmetry_table(
    mut out: impl Write,
    rows: &[SweepRow],
) -> std::io::Result<()> {
    writeln!(
        out,
        "sweep_value,class,eta1_exact,eta1_exp,eta2_exact,eta2_exp,eta3_exact,eta3_exp,I_m1,I_p1,I_m2,I_p2,I_m3,I_p3"
    )?;
    for row in rows {
        let o = &row.orders;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt(row.value),
            row.symmetry.kind.label(),
            fmt(o[0].eta_exact),
            fmt(o[0].eta_expansion),
            fmt(o[1].eta_exact),
            fmt(o[1].eta_expansion),
            fmt(o[2].eta_exact),
            fmt(o[2].eta_expansion),
            fmt(o[0].intensity_minus),
            fmt(o[0].intensity_plus),
            fmt(o[1].intensity_minus),
            fmt(o[1].intensity_plus),
            fmt(o[2].intensity_minus),
            fmt(o[2].intensity_plus),
        )?;
    }
    Ok(())
}
