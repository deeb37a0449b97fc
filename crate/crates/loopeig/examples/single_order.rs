//! Single-order and two-equal-order asymmetric diffraction.
//!
//! A weaker drive triple funnels almost all diffracted energy into one
//! order; a different coupling amplitude splits it into two near-equal
//! orders, the asymmetric analogue of a Dammann grating.
//!
//! Run: `cargo run --release --example single_order`

use loopeig::atomic::{AtomFieldParams, MediumParams, SusceptibilityMode, TAU};
use loopeig::grating::{
    intensity_spectrum, susceptibility_profile_with_tuning, transmission, GratingGeometry,
    ProbeTuning, SpatialModulation,
};
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
        n_samples: 2048,
        n_theta: 201,
        ..Default::default()
    };

    let single = AtomFieldParams {
        omega_c: 1.056,
        omega_d: 3.0,
        omega_m: 0.7,
        ..Default::default()
    }
    .with_loop_phase(TAU / 4.0);
    let dammann = AtomFieldParams {
        omega_c: 1.55,
        ..Default::default()
    }
    .with_loop_phase(TAU / 4.0);

    for (label, params) in [("single-order drive", single), ("Dammann-like drive", dammann)] {
        let profile = susceptibility_profile_with_tuning(
            &params,
            &medium,
            &modulation,
            &geometry,
            SusceptibilityMode::Exact,
            ProbeTuning::FixedProbe,
        )
        .unwrap();
        let t = transmission(&profile).unwrap();
        let spectrum = intensity_spectrum(&t, &geometry);
        let diffracted = spectrum.diffracted_energy();
        println!("{label} (Ω_c = {}):", params.omega_c);
        for o in &spectrum.orders {
            if o.n != 0 && o.intensity > 1e-4 {
                println!(
                    "  order {:+}: I = {:.4}  ({:.1}% of diffracted energy)",
                    o.n,
                    o.intensity,
                    100.0 * o.intensity / diffracted
                );
            }
        }
        println!();
    }
}
