//! Command-line front end: run, list and validate scenario configurations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use loopeig::scenario::{load_config, run_scenario, ScenarioError};

#[derive(Parser)]
#[command(
    name = "loopeig",
    version,
    about = "Non-Hermitian electromagnetically induced grating simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario configuration and write its data products.
    Run {
        /// Path to a `key = value` configuration file.
        config: PathBuf,
        /// Output directory (defaults to the config's output.dir, then
        /// loopeig_out/<scenario>).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (falls back to LOOPEIG_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the available scenarios.
    List,
    /// Parse and validate a configuration without running it.
    Validate {
        /// Path to a `key = value` configuration file.
        config: PathBuf,
    },
}

fn thread_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("LOOPEIG_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    })
}

fn fail(err: &ScenarioError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            print!("{}", loopeig::scenario::render_catalog());
            ExitCode::SUCCESS
        }
        Command::Validate { config } => match load_config(&config) {
            Ok(resolved) => {
                println!(
                    "ok: scenario `{}` with {} configuration keys resolved",
                    resolved.scenario.key(),
                    loopeig::scenario::resolved_entries(
                        &resolved,
                        Default::default(),
                        resolved.medium.chi_scale,
                        resolved.modulation.half_cycle,
                    )
                    .len()
                );
                ExitCode::SUCCESS
            }
            Err(err) => fail(&err),
        },
        Command::Run {
            config,
            out,
            threads,
        } => {
            if let Some(n) = thread_count(threads) {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                {
                    eprintln!("warning: could not set {n} threads: {e}");
                }
            }
            let resolved = match load_config(&config) {
                Ok(c) => c,
                Err(err) => return fail(&err),
            };
            match run_scenario(&resolved, out.as_deref()) {
                Ok(manifest) => {
                    println!(
                        "scenario `{}` complete: {} files",
                        manifest.scenario,
                        manifest.files.len()
                    );
                    for (path, _) in &manifest.files {
                        println!("  {}", path.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(err) => fail(&err),
            }
        }
    }
}
