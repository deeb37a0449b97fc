//! Named scenarios, plain-text configuration, deterministic data export and
//! run manifests.

mod config;
mod manifest;
mod plotscript;
mod runner;

pub use config::{load_config, parse_config, ScenarioConfig, ScenarioName, SweepSpec};
pub use manifest::{resolved_entries, sha256_hex, RunManifest};
pub use runner::{list_scenarios, render_catalog, run_scenario, ScenarioInfo, LOPSIDED_CHI_SCALE};

/// Errors from configuration parsing and scenario execution.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("config line {line}: {what}")]
    ParseError { line: usize, what: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("config value out of range: {key} must be {bound}, got {value}")]
    OutOfRange {
        key: String,
        bound: String,
        value: String,
    },
    #[error("i/o failure: {what}")]
    Io { what: String },
    #[error(transparent)]
    Atomic(#[from] crate::atomic::AtomicError),
    #[error(transparent)]
    Grating(#[from] crate::grating::GratingError),
    #[error(transparent)]
    Asymmetry(#[from] crate::asymmetry::AsymmetryError),
}

impl ScenarioError {
    /// Exit code class: 2 for configuration problems, 3 for runtime
    /// (numerical or i/o) failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::ParseError { .. }
            | ScenarioError::UnknownKey { .. }
            | ScenarioError::OutOfRange { .. } => 2,
            _ => 3,
        }
    }
}
