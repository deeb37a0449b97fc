//! Run manifests: resolved-configuration echo plus content digests of every
//! emitted file, one key per line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::config::ScenarioConfig;
use super::ScenarioError;
use crate::grating::{ProbeTuning, YModulation};

/// Record of one scenario run. Data files are deterministic for a given
/// resolved configuration; the manifest adds the tool version and timestamp
/// on top of the full configuration echo.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub tool_version: String,
    pub scenario: String,
    pub timestamp: String,
    /// Every resolved configuration value, as `key = value` text lines.
    pub resolved: Vec<(String, String)>,
    /// Emitted files with SHA-256 content digests.
    pub files: Vec<(PathBuf, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex::encode(hasher.finalize())
}

fn unix_timestamp() -> String {
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => format!("{}", d.as_secs()),
        Err(_) => "0".into(),
    }
}

fn fmt_f64(v: f64) -> String {
    // Shortest round-trip representation keeps the echo exact.
    format!("{v}")
}

/// Echo of every resolved configuration value, including the per-scenario
/// recipe choices passed in by the runner.
pub fn resolved_entries(
    config: &ScenarioConfig,
    tuning: ProbeTuning,
    chi_scale: f64,
    half_cycle: bool,
) -> Vec<(String, String)> {
    let p = &config.params;
    let m = &config.medium;
    let modu = &config.modulation;
    let g = &config.geometry;
    let mut out: Vec<(String, String)> = vec![
        ("scenario".into(), config.scenario.key().into()),
        ("field.omega_p".into(), fmt_f64(p.omega_p)),
        ("field.omega_c".into(), fmt_f64(p.omega_c)),
        ("field.omega_d".into(), fmt_f64(p.omega_d)),
        ("field.omega_m".into(), fmt_f64(p.omega_m)),
        ("field.phi_p".into(), fmt_f64(p.phi_p)),
        ("field.phi_c".into(), fmt_f64(p.phi_c)),
        ("field.phi_m".into(), fmt_f64(p.phi_m)),
        ("field.delta_p".into(), fmt_f64(p.delta_p)),
        ("field.delta_c".into(), fmt_f64(p.delta_c)),
        ("field.delta_d".into(), fmt_f64(p.delta_d)),
        ("field.decay_eg".into(), fmt_f64(p.decay_eg)),
        ("field.decay_em".into(), fmt_f64(p.decay_em)),
        ("field.decay_bm".into(), fmt_f64(p.decay_bm)),
        ("field.dephasing_ge".into(), fmt_f64(p.dephasing.ge)),
        ("field.dephasing_gm".into(), fmt_f64(p.dephasing.gm)),
        ("field.dephasing_gb".into(), fmt_f64(p.dephasing.gb)),
        ("field.dephasing_me".into(), fmt_f64(p.dephasing.me)),
        ("field.dephasing_mb".into(), fmt_f64(p.dephasing.mb)),
        ("field.dephasing_eb".into(), fmt_f64(p.dephasing.eb)),
        ("medium.density".into(), fmt_f64(m.density_n)),
        ("medium.length".into(), fmt_f64(m.length_l)),
        ("medium.wavelength".into(), fmt_f64(m.lambda_p)),
        ("medium.chi_scale".into(), fmt_f64(chi_scale)),
        ("modulation.delta_c0".into(), fmt_f64(modu.delta_c0)),
        ("modulation.q".into(), format!("{}", modu.q)),
        ("modulation.half_cycle".into(), format!("{half_cycle}")),
        ("modulation.x0".into(), fmt_f64(modu.x0)),
        (
            "modulation.y_kind".into(),
            match modu.y_modulation {
                YModulation::None => "none".into(),
                YModulation::Sin => "sin".into(),
                YModulation::Cos => "cos".into(),
            },
        ),
        ("modulation.delta_cy".into(), fmt_f64(modu.delta_cy)),
        ("modulation.y0".into(), fmt_f64(modu.y0)),
        ("geometry.period_ratio".into(), fmt_f64(g.period_ratio)),
        ("geometry.beam_periods".into(), fmt_f64(g.beam_periods)),
        ("geometry.samples".into(), format!("{}", g.n_samples)),
        ("geometry.angular_samples".into(), format!("{}", g.n_theta)),
        (
            "probe.tuning".into(),
            match tuning {
                ProbeTuning::TrackResonance => "track_resonance".into(),
                ProbeTuning::FixedProbe => "fixed_probe".into(),
                ProbeTuning::FrequencyTransfer => "frequency_transfer".into(),
            },
        ),
        (
            "delta.grid".into(),
            format!(
                "{}, {}, {}",
                fmt_f64(config.delta_grid.0),
                fmt_f64(config.delta_grid.1),
                config.delta_grid.2
            ),
        ),
        (
            "dammann.tolerance".into(),
            fmt_f64(config.dammann_tolerance),
        ),
    ];
    if let Some(sweep) = &config.sweep {
        out.push(("sweep.axis".into(), sweep.axis.label().into()));
        out.push((
            "sweep.values".into(),
            sweep
                .values
                .iter()
                .map(|v| fmt_f64(*v))
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    if let Some(phis) = &config.phi_list {
        out.push((
            "phi.list".into(),
            phis.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(", "),
        ));
    }
    out
}

impl RunManifest {
    pub fn new(config: &ScenarioConfig, resolved: Vec<(String, String)>) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: config.scenario.key().to_string(),
            timestamp: unix_timestamp(),
            resolved,
            files: Vec::new(),
        }
    }

    /// Register an emitted file by digesting its content.
    pub fn add_file(&mut self, path: &Path, content: &[u8]) {
        self.files.push((path.to_path_buf(), sha256_hex(content)));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tool = loopeig {}", self.tool_version);
        let _ = writeln!(out, "scenario = {}", self.scenario);
        let _ = writeln!(out, "timestamp = {}", self.timestamp);
        for (key, value) in &self.resolved {
            let _ = writeln!(out, "config.{key} = {value}");
        }
        for (path, digest) in &self.files {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let _ = writeln!(out, "file.{name} = sha256:{digest}");
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> Result<PathBuf, ScenarioError> {
        let path = dir.join("manifest.txt");
        std::fs::write(&path, self.render()).map_err(|e| ScenarioError::Io {
            what: format!("writing {}: {e}", path.display()),
        })?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex(b"loopeig"),
            sha256_hex(b"loopeig"),
        );
        assert_ne!(sha256_hex(b"a"), sha256_hex(b"b"));
    }

    #[test]
    fn manifest_echoes_all_resolved_values() {
        let config = ScenarioConfig::default();
        let entries = resolved_entries(&config, ProbeTuning::TrackResonance, 0.1, false);
        let manifest = RunManifest::new(&config, entries);
        let text = manifest.render();
        for key in [
            "config.field.omega_c = 5",
            "config.field.dephasing_gm = 0.001",
            "config.medium.density = 40000000000",
            "config.geometry.samples = 4096",
            "config.probe.tuning = track_resonance",
        ] {
            assert!(text.contains(key), "missing `{key}` in:\n{text}");
        }
    }
}
