//! Contrast ratios of diffraction orders 1-3 versus coupling amplitude.
//!
//! In the pure-loss antisymmetric branch the contrast stays pinned near 1
//! across the whole dynamic range of the coupling; the balanced PT branch is
//! nearly as one-sided.
//!
//! Run: `cargo run --release --example contrast_vs_coupling`

use loopeig::asymmetry::{robustness_sweep, SweepAxis};
use loopeig::atomic::{AtomFieldParams, MediumParams, TAU};
use loopeig::grating::{GratingGeometry, ProbeTuning, SpatialModulation};
use loopeig::scenario::LOPSIDED_CHI_SCALE;

fn main() {
    let medium = MediumParams {
        chi_scale: LOPSIDED_CHI_SCALE,
        ..Default::default()
    };
    let modulation = SpatialModulation {
        half_cycle: true,
        ..Default::default()
    };
    let geometry = GratingGeometry {
        n_samples: 1024,
        n_theta: 201,
        ..Default::default()
    };
    let values = [2.5, 3.5, 5.0, 6.5, 8.0];

    for (label, phi) in [("0", 0.0), ("π/2", TAU / 4.0)] {
        println!("Φ = {label}:");
        println!("{:>8} {:>12} {:>10} {:>10} {:>10}", "Ω_c", "class", "η₁", "η₂", "η₃");
        let rows = robustness_sweep(
            &AtomFieldParams::default(),
            &medium,
            &modulation,
            &geometry,
            ProbeTuning::FixedProbe,
            SweepAxis::OmegaC,
            &values,
            &[phi],
        )
        .unwrap();
        for row in rows {
            println!(
                "{:>8.1} {:>12} {:>10.4} {:>10.4} {:>10.4}",
                row.value,
                row.symmetry.kind.label(),
                row.orders[0].eta_exact,
                row.orders[1].eta_exact,
                row.orders[2].eta_exact,
            );
        }
        println!();
    }
}
