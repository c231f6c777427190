//! Command-line driver: every verification as a reproducible batch command.

mod commands;
mod config;
mod report;

use clap::{Args, Parser, Subcommand};
use config::{Format, Profile, RunConfig};
use report::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable capping the worker threads.
const THREADS_VAR: &str = "SHARP_INEQ_THREADS";

#[derive(Parser)]
#[command(name = "sharp-ineq", version, about = "Numerical checks of sharp Sobolev, HLS and Onofri inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the sharp constants and spectral ratios.
    Constants(Common),
    /// Check the deficit inequality, square identity, Poincaré bound and linearization on a seeded corpus.
    Verify(Common),
    /// Check the improved Onofri-type inequality and its endpoint limits.
    Mto(Common),
    /// Run the fast-diffusion flow and check its identities.
    Flow(Common),
}

#[derive(Args, Default)]
struct Common {
    /// Flat key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Order of the fractional Laplacian.
    #[arg(long)]
    s: Option<f64>,
    /// Band limit K of the zonal expansions (constants: largest tabulated degree).
    #[arg(long)]
    band: Option<usize>,
    /// Quadrature size Q.
    #[arg(long)]
    nodes: Option<usize>,
    /// Half-width of the flow box.
    #[arg(long = "L")]
    half_width: Option<f64>,
    /// Grid points per axis (a power of two).
    #[arg(long = "N")]
    grid: Option<usize>,
    /// Seed of the random corpus.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    corpus_size: Option<usize>,
    /// Band limit of the corpus functions.
    #[arg(long)]
    corpus_band: Option<usize>,
    /// Constant of the checked inequality: a multiple of S for verify, C_n itself for mto.
    #[arg(long = "C")]
    constant: Option<f64>,
    /// Relative tolerance of the margin checks (flow: of the dissipation identity).
    #[arg(long)]
    tol: Option<f64>,
    /// Initial datum of the flow.
    #[arg(long)]
    profile: Option<Profile>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Number of recorded samples of the flow.
    #[arg(long)]
    samples: Option<usize>,
    /// Bump amplitude of the perturbed datum.
    #[arg(long, allow_hyphen_values = true)]
    amplitude: Option<f64>,
    /// Width λ of the separated profile.
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn resolve(self, command: &str) -> Result<RunConfig, String> {
        let mut c = RunConfig::defaults(command);
        if let Some(path) = &self.config {
            c.apply_file(path)?;
        }
        macro_rules! take {
            ($($field:ident => $target:ident),* $(,)?) => {
                $(if let Some(v) = self.$field { c.$target = v; })*
            };
        }
        take!(
            n => n, s => s, band => band, nodes => nodes, half_width => half_width, grid => grid,
            seed => seed, corpus_size => corpus_size, corpus_band => corpus_band, constant => constant,
            tol => tol, profile => profile, t_end => t_end, samples => samples, amplitude => amplitude,
            scale => scale, format => format,
        );
        if self.output.is_some() {
            c.output = self.output;
        }
        Ok(c)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let (name, common) = match cli.command {
        Command::Constants(c) => ("constants", c),
        Command::Verify(c) => ("verify", c),
        Command::Mto(c) => ("mto", c),
        Command::Flow(c) => ("flow", c),
    };
    let config = common.resolve(name).map_err(CliError::Usage)?;
    let report = commands::run(&config)?;
    let text = report.render();
    match &config.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.status().exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sharp-ineq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
