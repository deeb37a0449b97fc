//! Delimiter-separated table exporters for profiles and spectra.

use std::io::Write;

use super::farfield::DiffractionSpectrum;
use super::profile::SusceptibilityProfile;
use crate::C64;

fn fmt(v: f64) -> String {
    // 12 significant digits.
    format!("{v:.11e}")
}

/// Columns: x, Re χ, Im χ, α, β, Re T, Im T. One header line.
pub fn write_profile_table(
    mut out: impl Write,
    profile: &SusceptibilityProfile,
    transmission: &[C64],
) -> std::io::Result<()> {
    writeln!(out, "x,re_chi,im_chi,alpha,beta,re_t,im_t")?;
    for i in 0..profile.x.len() {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt(profile.x[i]),
            fmt(profile.chi[i].re),
            fmt(profile.chi[i].im),
            fmt(profile.alpha[i]),
            fmt(profile.beta[i]),
            fmt(transmission[i].re),
            fmt(transmission[i].im),
        )?;
    }
    Ok(())
}

/// Columns: sinθ, I. One header line.
pub fn write_spectrum_table(
    mut out: impl Write,
    spectrum: &DiffractionSpectrum,
) -> std::io::Result<()> {
    writeln!(out, "sin_theta,intensity")?;
    for i in 0..spectrum.sin_theta.len() {
        writeln!(
            out,
            "{},{}",
            fmt(spectrum.sin_theta[i]),
            fmt(spectrum.intensity[i])
        )?;
    }
    Ok(())
}
