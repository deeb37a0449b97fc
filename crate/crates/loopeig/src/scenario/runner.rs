//! Named scenario recipes and their data products.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{linspace, ScenarioConfig, ScenarioName, SweepSpec};
use super::manifest::{resolved_entries, RunManifest};
use super::plotscript::PLOT_SCRIPT;
use super::ScenarioError;
use crate::asymmetry::{
    eta_exact, eta_expansion, robustness_sweep, scattering_coefficients, write_asymmetry_table,
    SweepAxis,
};
use crate::atomic::{
    susceptibility, verify_parity_frequency, AtomFieldParams, AtomicError, LoopPhase,
    Parity, SusceptibilityMode, TAU,
};
use crate::grating::{
    farfield_2d, intensity_spectrum, susceptibility_profile_with_tuning, transmission,
    write_profile_table, write_spectrum_table, DiffractionSpectrum, ProbeTuning,
    SusceptibilityProfile, YModulation,
};

/// Catalog entry of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub figure: &'static str,
}

/// Stable catalog of the named scenarios.
pub fn list_scenarios() -> Vec<ScenarioInfo> {
    vec![
        ScenarioInfo {
            name: "spectrum_vs_detuning",
            description: "probe dispersion/absorption spectra and their parity for each loop phase",
            figure: "figure 2",
        },
        ScenarioInfo {
            name: "profile_vs_x",
            description: "spatial susceptibility profiles and symmetry classes across drive-amplitude sweeps",
            figure: "figures 3-4",
        },
        ScenarioInfo {
            name: "lopsided",
            description: "one-sided far-field diffraction spectra for the four symmetry phases",
            figure: "figure 5",
        },
        ScenarioInfo {
            name: "eta_vs_omega_c",
            description: "contrast ratios of orders 1-3 versus coupling amplitude",
            figure: "figure 6",
        },
        ScenarioInfo {
            name: "special_diffraction",
            description: "single-order and two-equal-order asymmetric diffraction",
            figure: "figure 7",
        },
        ScenarioInfo {
            name: "map_2d",
            description: "two-dimensional far-field intensity map under additive x-y modulation",
            figure: "figure 8",
        },
    ]
}

/// Render the catalog as stable text.
pub fn render_catalog() -> String {
    let mut out = String::new();
    for info in list_scenarios() {
        let _ = writeln!(
            out,
            "{:22} {}  [{}]",
            info.name, info.description, info.figure
        );
    }
    out
}

const DEFAULT_PHI_LIST: [f64; 4] = [0.0, TAU / 4.0, TAU / 2.0, 3.0 * TAU / 4.0];

/// Peak optical depth used by the diffraction recipes. The reference
/// intensities (a dominant single-order efficiency near 0.6) pin the depth
/// at order unity; this value reproduces that anchor while keeping the
/// pure-loss contrasts above 0.99 and the balanced-phase diffraction
/// negative-sided.
pub const LOPSIDED_CHI_SCALE: f64 = 6.5;

/// Per-scenario recipe defaults applied when the config does not override
/// them explicitly.
struct Recipe {
    tuning: ProbeTuning,
    chi_scale: f64,
    half_cycle: bool,
}

fn recipe_for(config: &ScenarioConfig) -> Recipe {
    // The diffraction recipes use the ramp-like half-cycle waveform, the
    // fixed-probe operating point, and the optical depth the reference
    // intensities imply; the spectroscopy recipes keep the shallow
    // whole-harmonic defaults.
    let (tuning, chi_scale, half_cycle) = match config.scenario {
        ScenarioName::SpectrumVsDetuning => (ProbeTuning::TrackResonance, config.medium.chi_scale, false),
        ScenarioName::ProfileVsX => (ProbeTuning::TrackResonance, config.medium.chi_scale, false),
        ScenarioName::Lopsided => (ProbeTuning::FixedProbe, LOPSIDED_CHI_SCALE, true),
        ScenarioName::EtaVsOmegaC => (ProbeTuning::FixedProbe, LOPSIDED_CHI_SCALE, true),
        ScenarioName::SpecialDiffraction => (ProbeTuning::FixedProbe, LOPSIDED_CHI_SCALE, true),
        ScenarioName::Map2d => (ProbeTuning::FixedProbe, LOPSIDED_CHI_SCALE, true),
    };
    Recipe {
        tuning: config.tuning.unwrap_or(tuning),
        chi_scale: if config.chi_scale_explicit {
            config.medium.chi_scale
        } else {
            chi_scale
        },
        half_cycle: if config.half_cycle_explicit {
            config.modulation.half_cycle
        } else {
            half_cycle
        },
    }
}

struct Emitter {
    dir: PathBuf,
    manifest: RunManifest,
}

impl Emitter {
    fn emit(&mut self, name: &str, content: String) -> Result<(), ScenarioError> {
        let path = self.dir.join(name);
        std::fs::write(&path, content.as_bytes()).map_err(|e| ScenarioError::Io {
            what: format!("writing {}: {e}", path.display()),
        })?;
        self.manifest.add_file(&path, content.as_bytes());
        Ok(())
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.11e}")
}

fn parity_label(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// Execute a scenario and write its data products to `out_dir` (falling back
/// to the config's `output.dir`, then `loopeig_out/<scenario>`).
pub fn run_scenario(
    config: &ScenarioConfig,
    out_dir: Option<&Path>,
) -> Result<RunManifest, ScenarioError> {
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("loopeig_out").join(config.scenario.key()));
    std::fs::create_dir_all(&dir).map_err(|e| ScenarioError::Io {
        what: format!("creating {}: {e}", dir.display()),
    })?;

    let recipe = recipe_for(config);
    let mut medium = config.medium.clone();
    medium.chi_scale = recipe.chi_scale;
    let mut modulation = config.modulation.clone();
    modulation.half_cycle = recipe.half_cycle;

    let resolved = resolved_entries(config, recipe.tuning, recipe.chi_scale, recipe.half_cycle);
    let mut emitter = Emitter {
        dir: dir.clone(),
        manifest: RunManifest::new(config, resolved),
    };

    let phi_list: Vec<f64> = config
        .phi_list
        .clone()
        .unwrap_or_else(|| DEFAULT_PHI_LIST.to_vec());

    match config.scenario {
        ScenarioName::SpectrumVsDetuning => {
            spectrum_vs_detuning(config, &medium, &phi_list, &mut emitter)?
        }
        ScenarioName::ProfileVsX => {
            profile_vs_x(config, &medium, &modulation, recipe.tuning, &phi_list, &mut emitter)?
        }
        ScenarioName::Lopsided => {
            lopsided(config, &medium, &modulation, recipe.tuning, &phi_list, &mut emitter)?
        }
        ScenarioName::EtaVsOmegaC => {
            eta_vs_omega_c(config, &medium, &modulation, recipe.tuning, &phi_list, &mut emitter)?
        }
        ScenarioName::SpecialDiffraction => {
            special_diffraction(config, &medium, &modulation, recipe.tuning, &mut emitter)?
        }
        ScenarioName::Map2d => map_2d(config, &medium, &modulation, recipe.tuning, &mut emitter)?,
    }

    emitter.emit("plot.py", PLOT_SCRIPT.to_string())?;
    emitter.manifest.write_to(&dir)?;
    Ok(emitter.manifest)
}

fn spectrum_vs_detuning(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    phi_list: &[f64],
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let (min, max, count) = config.delta_grid;
    let grid = linspace(min, max, count);
    let mut summary = String::from(
        "phi,re_parity,im_parity,re_even_residual,re_odd_residual,im_even_residual,im_odd_residual\n",
    );
    for (i, &phi) in phi_list.iter().enumerate() {
        let base = config.params.clone().with_loop_phase(phi);
        let chi: Result<Vec<_>, AtomicError> = grid
            .par_iter()
            .map(|&delta| {
                let p = AtomFieldParams {
                    delta_p: delta,
                    ..base.clone()
                };
                susceptibility(&p, medium, SusceptibilityMode::Exact)
            })
            .collect();
        let chi = chi?;
        let mut table = String::from("delta_p,re_chi,im_chi\n");
        for (d, c) in grid.iter().zip(&chi) {
            let _ = writeln!(table, "{},{},{}", fmt(*d), fmt(c.re), fmt(c.im));
        }
        emitter.emit(&format!("chi_spectrum_phi{i}.csv"), table)?;

        // Parity assignment; generic phases are legitimately inconclusive.
        match verify_parity_frequency(&config.params, &grid, LoopPhase::new(phi)) {
            Ok(report) => {
                let _ = writeln!(
                    summary,
                    "{},{},{},{},{},{},{}",
                    fmt(phi),
                    parity_label(report.re),
                    parity_label(report.im),
                    fmt(report.re_residuals.even),
                    fmt(report.re_residuals.odd),
                    fmt(report.im_residuals.even),
                    fmt(report.im_residuals.odd),
                );
            }
            Err(AtomicError::InconclusiveParity {
                re_even,
                re_odd,
                im_even,
                im_odd,
            }) => {
                let _ = writeln!(
                    summary,
                    "{},inconclusive,inconclusive,{},{},{},{}",
                    fmt(phi),
                    fmt(re_even),
                    fmt(re_odd),
                    fmt(im_even),
                    fmt(im_odd),
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    emitter.emit("parity_summary.csv", summary)?;
    Ok(())
}

fn profile_pipeline(
    params: &AtomFieldParams,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    geometry: &crate::grating::GratingGeometry,
    tuning: ProbeTuning,
) -> Result<(SusceptibilityProfile, Vec<crate::C64>, DiffractionSpectrum), ScenarioError> {
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
    Ok((profile, t, spectrum))
}

fn profile_vs_x(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    tuning: ProbeTuning,
    phi_list: &[f64],
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let sweep = config.sweep.clone().unwrap_or(SweepSpec {
        axis: SweepAxis::OmegaC,
        values: vec![2.2, 3.5, 5.0, 7.5, 10.0],
    });
    let mut summary = String::from(
        "phi,sweep_value,class,alpha_even,alpha_odd,beta_even,beta_odd\n",
    );
    for (i, &phi) in phi_list.iter().enumerate() {
        for (j, &value) in sweep.values.iter().enumerate() {
            let mut params = config.params.clone().with_loop_phase(phi);
            sweep.axis.apply(&mut params, value);
            let (profile, t, _) =
                profile_pipeline(&params, medium, modulation, &config.geometry, tuning)?;
            let mut table = Vec::new();
            write_profile_table(&mut table, &profile, &t).map_err(|e| ScenarioError::Io {
                what: format!("formatting profile table: {e}"),
            })?;
            emitter.emit(
                &format!("profile_phi{i}_v{j}.csv"),
                String::from_utf8(table).expect("ascii table"),
            )?;
            let pr = &profile.parity_residuals;
            let _ = writeln!(
                summary,
                "{},{},{},{},{},{},{}",
                fmt(phi),
                fmt(value),
                profile.symmetry.kind.label(),
                fmt(pr.alpha_even),
                fmt(pr.alpha_odd),
                fmt(pr.beta_even),
                fmt(pr.beta_odd),
            );
        }
    }
    emitter.emit("class_summary.csv", summary)?;
    Ok(())
}

fn orders_table(spectrum: &DiffractionSpectrum) -> String {
    let mut out = String::from("n,sin_theta,intensity\n");
    for o in &spectrum.orders {
        let _ = writeln!(out, "{},{},{}", o.n, fmt(o.sin_theta), fmt(o.intensity));
    }
    out
}

fn lopsided(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    tuning: ProbeTuning,
    phi_list: &[f64],
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let mut summary = String::from(
        "phi,class,eta1_exact,eta2_exact,eta3_exact,eta1_expansion,negative_fraction\n",
    );
    for (i, &phi) in phi_list.iter().enumerate() {
        let params = config.params.clone().with_loop_phase(phi);
        let (profile, t, spectrum) =
            profile_pipeline(&params, medium, modulation, &config.geometry, tuning)?;
        let mut table = Vec::new();
        write_profile_table(&mut table, &profile, &t).map_err(|e| ScenarioError::Io {
            what: format!("formatting profile table: {e}"),
        })?;
        emitter.emit(
            &format!("profile_phi{i}.csv"),
            String::from_utf8(table).expect("ascii table"),
        )?;
        let mut spec_table = Vec::new();
        write_spectrum_table(&mut spec_table, &spectrum).map_err(|e| ScenarioError::Io {
            what: format!("formatting spectrum table: {e}"),
        })?;
        emitter.emit(
            &format!("spectrum_phi{i}.csv"),
            String::from_utf8(spec_table).expect("ascii table"),
        )?;
        emitter.emit(&format!("orders_phi{i}.csv"), orders_table(&spectrum))?;

        let eta = |n: i32| eta_exact(&spectrum, n).unwrap_or(f64::NAN);
        let neg: f64 = spectrum
            .orders
            .iter()
            .filter(|o| o.n < 0)
            .map(|o| o.intensity)
            .sum();
        let pos: f64 = spectrum
            .orders
            .iter()
            .filter(|o| o.n > 0)
            .map(|o| o.intensity)
            .sum();
        let coeffs = scattering_coefficients(&profile, 1);
        let eta1_exp = eta_expansion(&coeffs).map(|e| e.value).unwrap_or(f64::NAN);
        let _ = writeln!(
            summary,
            "{},{},{},{},{},{},{}",
            fmt(phi),
            profile.symmetry.kind.label(),
            fmt(eta(1)),
            fmt(eta(2)),
            fmt(eta(3)),
            fmt(eta1_exp),
            fmt(neg / (neg + pos)),
        );
    }
    emitter.emit("eta_summary.csv", summary)?;
    Ok(())
}

fn eta_vs_omega_c(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    tuning: ProbeTuning,
    phi_list: &[f64],
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let sweep = config.sweep.clone().unwrap_or(SweepSpec {
        axis: SweepAxis::OmegaC,
        values: linspace(2.0, 10.0, 17),
    });
    for (i, &phi) in phi_list.iter().enumerate() {
        let rows = robustness_sweep(
            &config.params,
            medium,
            modulation,
            &config.geometry,
            tuning,
            sweep.axis,
            &sweep.values,
            &[phi],
        )?;
        let mut table = Vec::new();
        write_asymmetry_table(&mut table, &rows).map_err(|e| ScenarioError::Io {
            what: format!("formatting asymmetry table: {e}"),
        })?;
        emitter.emit(
            &format!("eta_vs_{}_phi{i}.csv", sweep.axis.label()),
            String::from_utf8(table).expect("ascii table"),
        )?;
    }
    Ok(())
}

fn special_diffraction(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    tuning: ProbeTuning,
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let single = {
        let mut p = config.params.clone().with_loop_phase(TAU / 4.0);
        p.omega_c = 1.056;
        p.omega_d = 3.0;
        p.omega_m = 0.7;
        p
    };
    let dammann = {
        let mut p = config.params.clone().with_loop_phase(TAU / 4.0);
        p.omega_c = 1.55;
        p
    };
    let mut summary = String::from(
        "case,dominant_order,dominant_intensity,diffracted_fraction,eta1,eta2,eta3,equal_orders\n",
    );
    for (case, params) in [("single_order", single), ("dammann_like", dammann)] {
        let (profile, t, spectrum) =
            profile_pipeline(&params, medium, modulation, &config.geometry, tuning)?;
        let mut table = Vec::new();
        write_profile_table(&mut table, &profile, &t).map_err(|e| ScenarioError::Io {
            what: format!("formatting profile table: {e}"),
        })?;
        emitter.emit(
            &format!("profile_{case}.csv"),
            String::from_utf8(table).expect("ascii table"),
        )?;
        let mut spec_table = Vec::new();
        write_spectrum_table(&mut spec_table, &spectrum).map_err(|e| ScenarioError::Io {
            what: format!("formatting spectrum table: {e}"),
        })?;
        emitter.emit(
            &format!("spectrum_{case}.csv"),
            String::from_utf8(spec_table).expect("ascii table"),
        )?;
        emitter.emit(&format!("orders_{case}.csv"), orders_table(&spectrum))?;

        let diffracted = spectrum.diffracted_energy();
        let mut dominant = (0i32, 0.0f64);
        for o in &spectrum.orders {
            if o.n != 0 && o.intensity > dominant.1 {
                dominant = (o.n, o.intensity);
            }
        }
        // Pairs of appreciable orders equal within the configured tolerance.
        let appreciable: Vec<_> = spectrum
            .orders
            .iter()
            .filter(|o| o.n != 0 && o.intensity > 0.05 * dominant.1)
            .collect();
        let mut equal_pairs = Vec::new();
        for (a_idx, a) in appreciable.iter().enumerate() {
            for b in appreciable.iter().skip(a_idx + 1) {
                let rel = (a.intensity - b.intensity).abs()
                    / (0.5 * (a.intensity + b.intensity));
                if rel <= config.dammann_tolerance {
                    equal_pairs.push(format!("({}|{})", a.n, b.n));
                }
            }
        }
        let eta = |n: i32| eta_exact(&spectrum, n).unwrap_or(f64::NAN);
        let _ = writeln!(
            summary,
            "{},{},{},{},{},{},{},{}",
            case,
            dominant.0,
            fmt(dominant.1),
            fmt(dominant.1 / diffracted),
            fmt(eta(1)),
            fmt(eta(2)),
            fmt(eta(3)),
            if equal_pairs.is_empty() {
                "none".to_string()
            } else {
                equal_pairs.join(";")
            },
        );
    }
    emitter.emit("special_summary.csv", summary)?;
    Ok(())
}

fn map_2d(
    config: &ScenarioConfig,
    medium: &crate::atomic::MediumParams,
    modulation: &crate::grating::SpatialModulation,
    tuning: ProbeTuning,
    emitter: &mut Emitter,
) -> Result<(), ScenarioError> {
    let mut modulation = modulation.clone();
    if modulation.y_modulation == YModulation::None && modulation.delta_cy == 0.0 {
        modulation.y_modulation = YModulation::Cos;
        modulation.delta_cy = 0.1;
    }
    let params = config.params.clone().with_loop_phase(TAU / 4.0);
    let map = farfield_2d(&params, medium, &modulation, &config.geometry, tuning)?;

    let mut table = String::from("sin_theta_x,sin_theta_y,intensity\n");
    for (ix, &sx) in map.sin_theta_x.iter().enumerate() {
        for (iy, &sy) in map.sin_theta_y.iter().enumerate() {
            let _ = writeln!(
                table,
                "{},{},{}",
                fmt(sx),
                fmt(sy),
                fmt(map.intensity[(ix, iy)])
            );
        }
    }
    emitter.emit("map2d.csv", table)?;

    // The θ_y = 0 slice for comparison against the 1D spectrum.
    let iy0 = map
        .sin_theta_y
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut slice = String::from("sin_theta_x,intensity\n");
    for (ix, &sx) in map.sin_theta_x.iter().enumerate() {
        let _ = writeln!(slice, "{},{}", fmt(sx), fmt(map.intensity[(ix, iy0)]));
    }
    emitter.emit("map2d_slice_y0.csv", slice)?;
    Ok(())
}
