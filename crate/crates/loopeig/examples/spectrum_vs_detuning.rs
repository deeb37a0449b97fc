//! Probe dispersion and absorption spectra for the four symmetry phases.
//!
//! Sweeps the probe detuning with travelling-wave drives and prints how the
//! parity of Re χ_p and Im χ_p switches with the loop phase: odd absorption
//! with even dispersion at Φ = 0, π and the swapped pair at Φ = π/2, 3π/2.
//!
//! Run: `cargo run --release --example spectrum_vs_detuning`

use loopeig::atomic::{
    susceptibility, verify_parity_frequency, AtomFieldParams, AtomicError, LoopPhase,
    MediumParams, SusceptibilityMode, TAU,
};

fn main() {
    let medium = MediumParams::default();
    let grid: Vec<f64> = (0..201).map(|k| -10.0 + 0.1 * k as f64).collect();

    for (label, phi) in [
        ("0", 0.0),
        ("π/2", TAU / 4.0),
        ("π", TAU / 2.0),
        ("3π/2", 3.0 * TAU / 4.0),
    ] {
        let base = AtomFieldParams::default().with_loop_phase(phi);

        // A few sample points of the spectrum.
        println!("Φ = {label}:");
        for delta in [-6.0, -2.0, 0.0, 2.0, 6.0] {
            let params = AtomFieldParams {
                delta_p: delta,
                ..base.clone()
            };
            let chi = susceptibility(&params, &medium, SusceptibilityMode::Exact).unwrap();
            println!(
                "  δ_p = {delta:+5.1}  Re χ = {:+.3e}  Im χ = {:+.3e}",
                chi.re, chi.im
            );
        }

        match verify_parity_frequency(&AtomFieldParams::default(), &grid, LoopPhase::new(phi)) {
            Ok(report) => println!(
                "  parity: Re {:?} / Im {:?} (worst fold residual {:.1e})\n",
                report.re,
                report.im,
                report
                    .re_residuals
                    .odd
                    .min(report.re_residuals.even)
                    .max(report.im_residuals.even.min(report.im_residuals.odd)),
            ),
            Err(AtomicError::InconclusiveParity {
                re_even, im_odd, ..
            }) => println!(
                "  parity: approximate at this probe amplitude (Re even to {re_even:.1e}, Im odd to {im_odd:.1e})\n"
            ),
            Err(e) => panic!("{e}"),
        }
    }
}
