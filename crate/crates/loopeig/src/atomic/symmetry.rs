//! Loop-phase symmetry classification and numerical parity verification of
//! the probe spectra.

use super::params::{AtomFieldParams, LoopPhase, TAU};
use super::response::{susceptibility, SusceptibilityMode};
use super::{AtomicError, MediumParams};

/// Residual threshold below which a parity is assigned.
pub const PARITY_THRESHOLD: f64 = 1e-3;

/// Non-Hermitian symmetry classes of the spatially modulated response.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryKind {
    /// PT symmetric: even dispersion, odd absorption (gain/loss balanced).
    Pt,
    /// PT antisymmetric, purely lossy branch.
    NormalApt,
    /// PT antisymmetric, purely amplifying branch.
    AbnormalApt,
    NoSymmetry,
}

impl SymmetryKind {
    pub fn label(&self) -> &'static str {
        match self {
            SymmetryKind::Pt => "PT",
            SymmetryKind::NormalApt => "normal-APT",
            SymmetryKind::AbnormalApt => "abnormal-APT",
            SymmetryKind::NoSymmetry => "none",
        }
    }
}

/// A symmetry class together with the tolerance used to assign it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryClass {
    pub kind: SymmetryKind,
    pub tol: f64,
}

/// Classify the loop phase against the symmetry sets
/// {mπ} → PT, {(4m+1)π/2} → normal APT, {(4m−1)π/2} → abnormal APT.
///
/// `tol` must lie in (0, π/8) so the three sets stay disjoint.
pub fn classify_symmetry(phi: LoopPhase, tol: f64) -> SymmetryClass {
    assert!(
        tol > 0.0 && tol < std::f64::consts::PI / 8.0,
        "classification tolerance must lie in (0, π/8), got {tol}"
    );
    let d_pt = phi.distance_to(0.0).min(phi.distance_to(std::f64::consts::PI));
    let d_napt = phi.distance_to(TAU / 4.0);
    let d_aapt = phi.distance_to(3.0 * TAU / 4.0);
    let kind = if d_pt <= tol {
        SymmetryKind::Pt
    } else if d_napt <= tol {
        SymmetryKind::NormalApt
    } else if d_aapt <= tol {
        SymmetryKind::AbnormalApt
    } else {
        SymmetryKind::NoSymmetry
    };
    SymmetryClass { kind, tol }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Normalized fold residuals of a sampled real function on a symmetric grid:
/// `r_even = max|f(x)−f(−x)|/max|f|`, `r_odd = max|f(x)+f(−x)|/max|f|`.
#[derive(Debug, Clone, Copy)]
pub struct FoldResiduals {
    pub even: f64,
    pub odd: f64,
}

pub(crate) fn fold_residuals(values: &[f64]) -> FoldResiduals {
    let n = values.len();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return FoldResiduals { even: 0.0, odd: 0.0 };
    }
    let mut even = 0.0f64;
    let mut odd = 0.0f64;
    for i in 0..n {
        let j = n - 1 - i;
        even = even.max((values[i] - values[j]).abs());
        odd = odd.max((values[i] + values[j]).abs());
    }
    FoldResiduals {
        even: even / scale,
        odd: odd / scale,
    }
}

/// Parity assignment of the real and imaginary parts of a spectrum.
#[derive(Debug, Clone, Copy)]
pub struct ParityReport {
    pub re: Parity,
    pub im: Parity,
    pub re_residuals: FoldResiduals,
    pub im_residuals: FoldResiduals,
    pub threshold: f64,
}

fn assign(res: FoldResiduals, threshold: f64) -> Option<Parity> {
    match (res.even < threshold, res.odd < threshold) {
        (true, false) => Some(Parity::Even),
        (false, true) => Some(Parity::Odd),
        // Degenerate (≈ zero) series: pick the smaller residual.
        (true, true) => Some(if res.even <= res.odd {
            Parity::Even
        } else {
            Parity::Odd
        }),
        (false, false) => None,
    }
}

pub(crate) fn parity_report_from_series(
    re: &[f64],
    im: &[f64],
    threshold: f64,
) -> Result<ParityReport, AtomicError> {
    let re_res = fold_residuals(re);
    let im_res = fold_residuals(im);
    match (assign(re_res, threshold), assign(im_res, threshold)) {
        (Some(re_p), Some(im_p)) => Ok(ParityReport {
            re: re_p,
            im: im_p,
            re_residuals: re_res,
            im_residuals: im_res,
            threshold,
        }),
        _ => Err(AtomicError::InconclusiveParity {
            re_even: re_res.even,
            re_odd: re_res.odd,
            im_even: im_res.even,
            im_odd: im_res.odd,
        }),
    }
}

/// Evaluate χ_p over a symmetric detuning grid at loop phase `phi` and assign
/// the parity of its real and imaginary parts.
///
/// The grid must be symmetric about zero. Both parts must fall below
/// [`PARITY_THRESHOLD`] for one parity each, otherwise the result is the
/// `InconclusiveParity` error carrying all four residuals.
pub fn verify_parity_frequency(
    params: &AtomFieldParams,
    delta_grid: &[f64],
    phi: LoopPhase,
) -> Result<ParityReport, AtomicError> {
    let n = delta_grid.len();
    if n < 3 {
        return Err(AtomicError::InvalidParams {
            what: "parity grid needs at least 3 points".into(),
        });
    }
    let span = delta_grid.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        if (delta_grid[i] + delta_grid[n - 1 - i]).abs() > 1e-9 * span.max(1.0) {
            return Err(AtomicError::AsymmetricGrid);
        }
    }
    let medium = MediumParams::default();
    let base = params.clone().with_loop_phase(phi.radians());
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for &delta in delta_grid {
        let p = AtomFieldParams {
            delta_p: delta,
            ..base.clone()
        };
        let chi = susceptibility(&p, &medium, SusceptibilityMode::Exact)?;
        re.push(chi.re);
        im.push(chi.im);
    }
    parity_report_from_series(&re, &im, PARITY_THRESHOLD)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_matches_symmetry_sets() {
        let tol = 0.05;
        assert_eq!(classify_symmetry(LoopPhase::new(0.0), tol).kind, SymmetryKind::Pt);
        assert_eq!(
            classify_symmetry(LoopPhase::new(std::f64::consts::PI), tol).kind,
            SymmetryKind::Pt
        );
        assert_eq!(
            classify_symmetry(LoopPhase::new(TAU / 4.0), tol).kind,
            SymmetryKind::NormalApt
        );
        assert_eq!(
            classify_symmetry(LoopPhase::new(3.0 * TAU / 4.0), tol).kind,
            SymmetryKind::AbnormalApt
        );
        assert_eq!(
            classify_symmetry(LoopPhase::new(0.3), tol).kind,
            SymmetryKind::NoSymmetry
        );
        // Wrapped representatives.
        assert_eq!(
            classify_symmetry(LoopPhase::new(TAU / 4.0 + TAU), tol).kind,
            SymmetryKind::NormalApt
        );
    }

    #[test]
    #[should_panic]
    fn classification_tolerance_domain() {
        classify_symmetry(LoopPhase::new(0.0), 1.0);
    }

    #[test]
    fn fold_residuals_of_pure_parities() {
        let xs: Vec<f64> = (0..101).map(|i| -1.0 + 0.02 * i as f64).collect();
        let even: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let odd: Vec<f64> = xs.iter().map(|x| x * x * x).collect();
        let re = fold_residuals(&even);
        assert!(re.even < 1e-14 && re.odd > 0.1);
        let ro = fold_residuals(&odd);
        assert!(ro.odd < 1e-14 && ro.even > 0.1);
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let err = verify_parity_frequency(
            &AtomFieldParams::default(),
            &[-1.0, 0.0, 2.0],
            LoopPhase::new(0.0),
        )
        .unwrap_err();
        assert!(matches!(err, AtomicError::AsymmetricGrid));
    }
}
