//! One-sided far-field diffraction of the non-Hermitian grating.
//!
//! With the ramp-like half-cycle detuning modulation the medium's causal
//! frequency response maps onto space, so the grating diffracts almost
//! exclusively into negative orders for every symmetry phase.
//!
//! Run: `cargo run --release --example lopsided_diffraction`

use loopeig::asymmetry::eta_exact;
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

    for (label, phi) in [
        ("0 (PT)", 0.0),
        ("π/2 (lossy APT)", TAU / 4.0),
        ("3π/2 (amplifying APT)", 3.0 * TAU / 4.0),
    ] {
        let params = AtomFieldParams::default().with_loop_phase(phi);
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

        println!("Φ = {label}  [class: {}]", profile.symmetry.kind.label());
        println!("  order:     -3        -2        -1         0        +1        +2        +3");
        let mut line = String::from("  I:    ");
        for n in -3..=3 {
            line.push_str(&format!(" {:9.3e}", spectrum.order(n).unwrap().intensity));
        }
        println!("{line}");
        for n in 1..=3 {
            if let Ok(eta) = eta_exact(&spectrum, n) {
                print!("  η_{n} = {eta:.4}");
            }
        }
        println!("\n");
    }
}
