//! Line-oriented scenario configuration: `section.key = value` pairs with
//! `#` comments, unknown keys rejected, every physical default equal to the
//! reference parameter set.

use std::path::{Path, PathBuf};

use super::ScenarioError;
use crate::atomic::{AtomFieldParams, MediumParams};
use crate::grating::{GratingGeometry, ProbeTuning, SpatialModulation, YModulation};
use crate::asymmetry::SweepAxis;

/// The named scenarios, one per headline result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioName {
    SpectrumVsDetuning,
    ProfileVsX,
    Lopsided,
    EtaVsOmegaC,
    SpecialDiffraction,
    Map2d,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 6] = [
        ScenarioName::SpectrumVsDetuning,
        ScenarioName::ProfileVsX,
        ScenarioName::Lopsided,
        ScenarioName::EtaVsOmegaC,
        ScenarioName::SpecialDiffraction,
        ScenarioName::Map2d,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            ScenarioName::SpectrumVsDetuning => "spectrum_vs_detuning",
            ScenarioName::ProfileVsX => "profile_vs_x",
            ScenarioName::Lopsided => "lopsided",
            ScenarioName::EtaVsOmegaC => "eta_vs_omega_c",
            ScenarioName::SpecialDiffraction => "special_diffraction",
            ScenarioName::Map2d => "map_2d",
        }
    }

    pub fn parse(s: &str) -> Option<ScenarioName> {
        ScenarioName::ALL.into_iter().find(|n| n.key() == s)
    }
}

/// Sweep axis specification: uniform range or explicit list.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// Fully resolved scenario configuration.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: ScenarioName,
    pub out_dir: Option<PathBuf>,
    pub params: AtomFieldParams,
    pub medium: MediumParams,
    /// `medium.chi_scale` appeared explicitly in the config.
    pub chi_scale_explicit: bool,
    pub modulation: SpatialModulation,
    /// `modulation.half_cycle` appeared explicitly.
    pub half_cycle_explicit: bool,
    pub geometry: GratingGeometry,
    pub tuning: Option<ProbeTuning>,
    pub sweep: Option<SweepSpec>,
    pub phi_list: Option<Vec<f64>>,
    /// Probe-detuning grid (min, max, count) for spectra.
    pub delta_grid: (f64, f64, usize),
    /// Equal-intensity tolerance of the Dammann-like report.
    pub dammann_tolerance: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            scenario: ScenarioName::SpectrumVsDetuning,
            out_dir: None,
            params: AtomFieldParams::default(),
            medium: MediumParams::default(),
            chi_scale_explicit: false,
            modulation: SpatialModulation::default(),
            half_cycle_explicit: false,
            geometry: GratingGeometry::default(),
            tuning: None,
            sweep: None,
            phi_list: None,
            delta_grid: (-10.0, 10.0, 401),
            dammann_tolerance: 0.05,
        }
    }
}

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64, ScenarioError> {
    value.parse::<f64>().map_err(|_| ScenarioError::ParseError {
        line,
        what: format!("{key}: expected a number, got `{value}`"),
    })
}

fn parse_usize(key: &str, value: &str, line: usize) -> Result<usize, ScenarioError> {
    value.parse::<usize>().map_err(|_| ScenarioError::ParseError {
        line,
        what: format!("{key}: expected a non-negative integer, got `{value}`"),
    })
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool, ScenarioError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ScenarioError::ParseError {
            line,
            what: format!("{key}: expected true/false, got `{value}`"),
        }),
    }
}

fn parse_list(key: &str, value: &str, line: usize) -> Result<Vec<f64>, ScenarioError> {
    value
        .split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|_| ScenarioError::ParseError {
                line,
                what: format!("{key}: expected comma-separated numbers, got `{tok}`"),
            })
        })
        .collect()
}

fn require(cond: bool, key: &str, bound: &str, value: impl std::fmt::Display) -> Result<(), ScenarioError> {
    if cond {
        Ok(())
    } else {
        Err(ScenarioError::OutOfRange {
            key: key.to_string(),
            bound: bound.to_string(),
            value: value.to_string(),
        })
    }
}

/// Parse and resolve a configuration file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        what: format!("reading {}: {e}", path.display()),
    })?;
    parse_config(&text)
}

/// Parse a configuration from text (used by `load_config` and tests).
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let mut config = ScenarioConfig::default();
    let mut sweep_axis: Option<SweepAxis> = None;
    let mut sweep_range: (Option<f64>, Option<f64>, Option<usize>) = (None, None, None);
    let mut sweep_values: Option<Vec<f64>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let Some((key, value)) = stripped.split_once('=') else {
            return Err(ScenarioError::ParseError {
                line,
                what: format!("expected `key = value`, got `{stripped}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let p = &mut config.params;
        match key {
            "scenario" => {
                config.scenario =
                    ScenarioName::parse(value).ok_or_else(|| ScenarioError::ParseError {
                        line,
                        what: format!(
                            "unknown scenario `{value}`; expected one of {}",
                            ScenarioName::ALL.map(|n| n.key()).join(", ")
                        ),
                    })?;
            }
            "output.dir" => config.out_dir = Some(PathBuf::from(value)),

            "field.omega_p" => p.omega_p = parse_f64(key, value, line)?,
            "field.omega_c" => p.omega_c = parse_f64(key, value, line)?,
            "field.omega_d" => p.omega_d = parse_f64(key, value, line)?,
            "field.omega_m" => p.omega_m = parse_f64(key, value, line)?,
            "field.phi_p" => p.phi_p = parse_f64(key, value, line)?,
            "field.phi_c" => p.phi_c = parse_f64(key, value, line)?,
            "field.phi_m" => p.phi_m = parse_f64(key, value, line)?,
            "field.delta_p" => p.delta_p = parse_f64(key, value, line)?,
            "field.delta_c" => p.delta_c = parse_f64(key, value, line)?,
            "field.delta_d" => p.delta_d = parse_f64(key, value, line)?,
            "field.decay_eg" => p.decay_eg = parse_f64(key, value, line)?,
            "field.decay_em" => p.decay_em = parse_f64(key, value, line)?,
            "field.decay_bm" => p.decay_bm = parse_f64(key, value, line)?,
            "field.dephasing_ge" => p.dephasing.ge = parse_f64(key, value, line)?,
            "field.dephasing_gm" => p.dephasing.gm = parse_f64(key, value, line)?,
            "field.dephasing_gb" => p.dephasing.gb = parse_f64(key, value, line)?,
            "field.dephasing_me" => p.dephasing.me = parse_f64(key, value, line)?,
            "field.dephasing_mb" => p.dephasing.mb = parse_f64(key, value, line)?,
            "field.dephasing_eb" => p.dephasing.eb = parse_f64(key, value, line)?,

            "medium.density" => config.medium.density_n = parse_f64(key, value, line)?,
            "medium.length" => config.medium.length_l = parse_f64(key, value, line)?,
            "medium.wavelength" => config.medium.lambda_p = parse_f64(key, value, line)?,
            "medium.chi_scale" => {
                config.medium.chi_scale = parse_f64(key, value, line)?;
                config.chi_scale_explicit = true;
            }

            "modulation.delta_c0" => config.modulation.delta_c0 = parse_f64(key, value, line)?,
            "modulation.q" => {
                let q = parse_usize(key, value, line)?;
                require(q >= 1, key, ">= 1", q)?;
                config.modulation.q = q as u32;
            }
            "modulation.half_cycle" => {
                config.modulation.half_cycle = parse_bool(key, value, line)?;
                config.half_cycle_explicit = true;
            }
            "modulation.x0" => config.modulation.x0 = parse_f64(key, value, line)?,
            "modulation.y_kind" => {
                config.modulation.y_modulation = match value {
                    "none" => YModulation::None,
                    "sin" => YModulation::Sin,
                    "cos" => YModulation::Cos,
                    _ => {
                        return Err(ScenarioError::ParseError {
                            line,
                            what: format!("{key}: expected none|sin|cos, got `{value}`"),
                        })
                    }
                };
            }
            "modulation.delta_cy" => config.modulation.delta_cy = parse_f64(key, value, line)?,
            "modulation.y0" => config.modulation.y0 = parse_f64(key, value, line)?,

            "geometry.period_ratio" => {
                config.geometry.period_ratio = parse_f64(key, value, line)?
            }
            "geometry.beam_periods" => {
                config.geometry.beam_periods = parse_f64(key, value, line)?
            }
            "geometry.samples" => config.geometry.n_samples = parse_usize(key, value, line)?,
            "geometry.angular_samples" => {
                config.geometry.n_theta = parse_usize(key, value, line)?
            }

            "probe.tuning" => {
                config.tuning = Some(match value {
                    "track_resonance" => ProbeTuning::TrackResonance,
                    "fixed_probe" => ProbeTuning::FixedProbe,
                    "frequency_transfer" => ProbeTuning::FrequencyTransfer,
                    _ => {
                        return Err(ScenarioError::ParseError {
                            line,
                            what: format!(
                                "{key}: expected track_resonance|fixed_probe|frequency_transfer, got `{value}`"
                            ),
                        })
                    }
                });
            }

            "sweep.axis" => {
                sweep_axis = Some(match value {
                    "omega_c" => SweepAxis::OmegaC,
                    "omega_d" => SweepAxis::OmegaD,
                    "omega_m" => SweepAxis::OmegaM,
                    _ => {
                        return Err(ScenarioError::ParseError {
                            line,
                            what: format!("{key}: expected omega_c|omega_d|omega_m, got `{value}`"),
                        })
                    }
                });
            }
            "sweep.min" => sweep_range.0 = Some(parse_f64(key, value, line)?),
            "sweep.max" => sweep_range.1 = Some(parse_f64(key, value, line)?),
            "sweep.count" => sweep_range.2 = Some(parse_usize(key, value, line)?),
            "sweep.values" => sweep_values = Some(parse_list(key, value, line)?),

            "phi.list" => config.phi_list = Some(parse_list(key, value, line)?),

            "delta.min" => config.delta_grid.0 = parse_f64(key, value, line)?,
            "delta.max" => config.delta_grid.1 = parse_f64(key, value, line)?,
            "delta.count" => config.delta_grid.2 = parse_usize(key, value, line)?,

            "dammann.tolerance" => config.dammann_tolerance = parse_f64(key, value, line)?,

            _ => {
                return Err(ScenarioError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }

    // Assemble the sweep spec.
    if sweep_axis.is_some() || sweep_values.is_some() || sweep_range.0.is_some() {
        let axis = sweep_axis.ok_or_else(|| ScenarioError::ParseError {
            line: 0,
            what: "sweep.* given without sweep.axis".into(),
        })?;
        let values = if let Some(values) = sweep_values {
            values
        } else {
            let (min, max, count) = (
                sweep_range.0.unwrap_or(2.0),
                sweep_range.1.unwrap_or(10.0),
                sweep_range.2.unwrap_or(33),
            );
            require(count >= 1, "sweep.count", ">= 1", count)?;
            require(max >= min, "sweep.max", ">= sweep.min", max)?;
            linspace(min, max, count)
        };
        config.sweep = Some(SweepSpec { axis, values });
    }

    validate(&config)?;
    Ok(config)
}

pub(crate) fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    (0..count)
        .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
        .collect()
}

fn validate(config: &ScenarioConfig) -> Result<(), ScenarioError> {
    let p = &config.params;
    for (key, v) in [
        ("field.omega_p", p.omega_p),
        ("field.omega_c", p.omega_c),
        ("field.omega_d", p.omega_d),
        ("field.omega_m", p.omega_m),
    ] {
        require(v >= 0.0 && v.is_finite(), key, ">= 0", v)?;
    }
    for (key, v) in [
        ("field.decay_eg", p.decay_eg),
        ("field.decay_em", p.decay_em),
        ("field.decay_bm", p.decay_bm),
        ("field.dephasing_ge", p.dephasing.ge),
        ("field.dephasing_gm", p.dephasing.gm),
        ("field.dephasing_gb", p.dephasing.gb),
        ("field.dephasing_me", p.dephasing.me),
        ("field.dephasing_mb", p.dephasing.mb),
        ("field.dephasing_eb", p.dephasing.eb),
        ("medium.density", config.medium.density_n),
        ("medium.length", config.medium.length_l),
        ("medium.wavelength", config.medium.lambda_p),
        ("medium.chi_scale", config.medium.chi_scale),
    ] {
        require(v > 0.0 && v.is_finite(), key, "> 0", v)?;
    }
    require(
        config.modulation.delta_c0 >= 0.0,
        "modulation.delta_c0",
        ">= 0",
        config.modulation.delta_c0,
    )?;
    require(
        config.modulation.x0.abs() <= 0.5,
        "modulation.x0",
        "|x0| <= 1/2",
        config.modulation.x0,
    )?;
    require(
        config.modulation.delta_cy >= 0.0,
        "modulation.delta_cy",
        ">= 0",
        config.modulation.delta_cy,
    )?;
    require(
        config.geometry.period_ratio >= 1.0,
        "geometry.period_ratio",
        ">= 1",
        config.geometry.period_ratio,
    )?;
    require(
        config.geometry.beam_periods >= 1.0,
        "geometry.beam_periods",
        ">= 1",
        config.geometry.beam_periods,
    )?;
    require(
        config.geometry.n_samples >= 256 && config.geometry.n_samples.is_power_of_two(),
        "geometry.samples",
        "power of two >= 256",
        config.geometry.n_samples,
    )?;
    require(
        config.geometry.n_theta >= 3,
        "geometry.angular_samples",
        ">= 3",
        config.geometry.n_theta,
    )?;
    require(
        config.delta_grid.2 >= 3,
        "delta.count",
        ">= 3",
        config.delta_grid.2,
    )?;
    require(
        config.delta_grid.1 > config.delta_grid.0,
        "delta.max",
        "> delta.min",
        config.delta_grid.1,
    )?;
    require(
        config.dammann_tolerance > 0.0 && config.dammann_tolerance < 1.0,
        "dammann.tolerance",
        "in (0, 1)",
        config.dammann_tolerance,
    )?;
    if let Some(sweep) = &config.sweep {
        for v in &sweep.values {
            require(*v >= 0.0 && v.is_finite(), "sweep.values", ">= 0", *v)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_all_defaults() {
        let config = parse_config("").unwrap();
        assert_eq!(config.params, AtomFieldParams::default());
        assert_eq!(config.medium, MediumParams::default());
        assert_eq!(config.modulation, SpatialModulation::default());
        assert_eq!(config.geometry, GratingGeometry::default());
        // Reference values spelled out.
        assert_eq!(config.params.omega_c, 5.0);
        assert_eq!(config.params.omega_d, 5.0);
        assert_eq!(config.params.omega_m, 0.5);
        assert_eq!(config.params.omega_p, 0.01);
        assert_eq!(config.params.decay_eg, 3.0);
        assert_eq!(config.params.dephasing.gm, 1.0e-3);
        assert_eq!(config.medium.density_n, 4.0e10);
        assert_eq!(config.medium.length_l, 20.0);
        assert_eq!(config.modulation.delta_c0, 4.0);
        assert_eq!(config.geometry.period_ratio, 6.0);
        assert_eq!(config.geometry.beam_periods, 10.0);
    }

    #[test]
    fn single_override() {
        let config = parse_config("field.omega_c = 3.5\n").unwrap();
        assert_eq!(config.params.omega_c, 3.5);
        let mut expected = AtomFieldParams::default();
        expected.omega_c = 3.5;
        assert_eq!(config.params, expected);
    }

    #[test]
    fn negative_rabi_is_out_of_range() {
        let err = parse_config("field.omega_c = -1\n").unwrap_err();
        assert!(matches!(err, ScenarioError::OutOfRange { .. }));
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config("field.omega_q = 1\n").unwrap_err();
        match err {
            ScenarioError::UnknownKey { line, key } => {
                assert_eq!(line, 1);
                assert_eq!(key, "field.omega_q");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err = parse_config("# comment\nfield.omega_c == 3\n").unwrap_err();
        match err {
            ScenarioError::ParseError { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sweep_spec_from_range_and_list() {
        let config =
            parse_config("sweep.axis = omega_c\nsweep.min = 2\nsweep.max = 4\nsweep.count = 3\n")
                .unwrap();
        assert_eq!(config.sweep.unwrap().values, vec![2.0, 3.0, 4.0]);
        let config = parse_config("sweep.axis = omega_m\nsweep.values = 0.2, 0.35, 0.5\n").unwrap();
        let sweep = config.sweep.unwrap();
        assert_eq!(sweep.axis, SweepAxis::OmegaM);
        assert_eq!(sweep.values, vec![0.2, 0.35, 0.5]);
    }

    #[test]
    fn scenario_names_round_trip() {
        for name in ScenarioName::ALL {
            let text = format!("scenario = {}\n", name.key());
            assert_eq!(parse_config(&text).unwrap().scenario, name);
        }
        assert!(parse_config("scenario = nope\n").is_err());
    }
}
