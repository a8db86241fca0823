//! Command-line driver: each subcommand runs one family of checks and writes
//! `<name>.csv`, a JSON summary `<name>.json` and `<name>.manifest.json`.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 1 for usage
//! and domain errors.

pub mod commands;
pub mod grid;
pub mod report;

use clap::{Parser, Subcommand};
use report::{RunInfo, RunManifest, Summary};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

const GRID_HELP: &str = "\
Grids: `a:b:k` means k points from a to b inclusive, geometric for t- and \
τ-grids and linear otherwise; a comma list gives the points explicitly.";

#[derive(Debug, Parser)]
#[command(name = "dimlift", version, about = "Dimension-lifting checks", after_help = GRID_HELP)]
pub struct Cli {
    /// Directory receiving the CSV and JSON outputs.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, global = true, env = "DIMLIFT_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Base seed of every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative error of G_{t,n} against G_t as n grows.
    GnLimit(commands::weights::GnLimitArgs),
    /// Monte Carlo on the lifted sphere and ball against weighted quadrature.
    Pushforward(commands::weights::PushforwardArgs),
    /// Almgren or Poon frequency: constancy and monotonicity.
    Frequency(commands::frequency::FrequencyArgs),
    /// Elliptic and parabolic Carleman inequalities on bump fields.
    Carleman(commands::carleman::CarlemanArgs),
    /// Two-phase functionals on half-space and perturbed pairs.
    TwoPhase(commands::two_phase::TwoPhaseArgs),
    /// Harmonic-map density ratios and their lifted forms.
    HarmonicMap(commands::harmonic_map::HarmonicMapArgs),
    /// Minimal-surface and graph-flow densities.
    Mcf(commands::mcf::McfArgs),
    /// Convergence of a lifted functional to its parabolic limit.
    LiftDemo(commands::lift_demo::LiftDemoArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GnLimit(_) => "gn-limit",
            Command::Pushforward(_) => "pushforward",
            Command::Frequency(_) => "frequency",
            Command::Carleman(_) => "carleman",
            Command::TwoPhase(_) => "two-phase",
            Command::HarmonicMap(_) => "harmonic-map",
            Command::Mcf(_) => "mcf",
            Command::LiftDemo(_) => "lift-demo",
        }
    }

    fn parameters(&self) -> serde_json::Value {
        let v = match self {
            Command::GnLimit(a) => serde_json::to_value(a),
            Command::Pushforward(a) => serde_json::to_value(a),
            Command::Frequency(a) => serde_json::to_value(a),
            Command::Carleman(a) => serde_json::to_value(a),
            Command::TwoPhase(a) => serde_json::to_value(a),
            Command::HarmonicMap(a) => serde_json::to_value(a),
            Command::Mcf(a) => serde_json::to_value(a),
            Command::LiftDemo(a) => serde_json::to_value(a),
        };
        v.unwrap_or(serde_json::Value::Null)
    }

    fn execute(&self, seed: u64) -> Result<report::Outcome, commands::CliError> {
        match self {
            Command::GnLimit(a) => a.run(),
            Command::Pushforward(a) => a.run(seed),
            Command::Frequency(a) => a.run(),
            Command::Carleman(a) => a.run(seed),
            Command::TwoPhase(a) => a.run(),
            Command::HarmonicMap(a) => a.run(),
            Command::Mcf(a) => a.run(),
            Command::LiftDemo(a) => a.run(seed),
        }
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(passed) => {
            if passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, commands::CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| commands::CliError::Usage(e.to_string()))?;
    let threads = pool.current_num_threads();
    let start = Instant::now();
    let outcome = pool.install(|| cli.command.execute(cli.seed))?;
    let wall_time = start.elapsed().as_secs_f64();

    let name = cli.command.name();
    let files = [format!("{name}.csv"), format!("{name}.json"), format!("{name}.manifest.json")];
    let manifest = RunManifest {
        subcommand: name.to_string(),
        parameters: cli.command.parameters(),
        seed: cli.seed,
        outputs: files.to_vec(),
    };
    std::fs::create_dir_all(&cli.out_dir)?;
    outcome.write_csv(&cli.out_dir.join(&files[0]))?;
    let summary = Summary {
        status: if outcome.passed() { "pass" } else { "fail" },
        worst_violation: outcome.worst_violation,
        max_error: outcome.max_error,
        failures: &outcome.failures,
        manifest: &manifest,
    };
    write_json(&cli.out_dir.join(&files[1]), &summary)?;
    write_json(&cli.out_dir.join(&files[2]), &RunInfo { manifest: &manifest, wall_time, threads })?;

    println!("{name}: {} ({} rows)", summary.status, outcome.rows.len());
    for f in &outcome.failures {
        println!("  {f}");
    }
    Ok(outcome.passed())
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    s.push('\n');
    std::fs::write(path, s)
}
