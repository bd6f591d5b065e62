//! `coollab` command-line front end.
//!
//! Exit codes: 0 success, 1 a physical negative (cooling possible or bound
//! violated), 2 any operational error. Payloads go to stdout, diagnostics to
//! stderr.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coollab::experiments::{OptimizerMethod, ReportFormat};
use coollab::noise::NoisyParameter;

#[derive(Debug, Parser)]
#[command(
    name = "coollab",
    version,
    about = "Cooling bounds for random-unitary and Kraus channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the random-unitary and standard-channel sweeps.
    Verify(VerifyArgs),
    /// Apply a channel file to a state file and compare largest populations.
    Evolve(EvolveArgs),
    /// Largest-population scatter for noisy STIRAP.
    Figure1(Figure1Args),
    /// Theorem sweep over random channels.
    Sweep(SweepArgs),
    /// Print the channel certificate.
    Certify(CertifyArgs),
    /// Effective temperature of a two-level population.
    Temperature(TemperatureArgs),
    /// Maximize Y over the weights for fixed angles.
    Optimize(OptimizeArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Experiment config used for the random-unitary sweep.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed (falls back to COOLLAB_SEED).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    channel: PathBuf,
    state: PathBuf,
    /// Where to write the final state.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Slack allowed in Q_1 <= P_1.
    #[arg(long, default_value_t = coollab::tol::THEOREM)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Noisy {
    Theta,
    Alpha,
}

impl From<Noisy> for NoisyParameter {
    fn from(n: Noisy) -> Self {
        match n {
            Noisy::Theta => NoisyParameter::Theta,
            Noisy::Alpha => NoisyParameter::Alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct Figure1Args {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed (falls back to the config, then COOLLAB_SEED).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    realizations: Option<usize>,
    #[arg(long, value_enum)]
    noisy: Option<Noisy>,
    /// Value of the angle that does not fluctuate.
    #[arg(long, allow_negative_numbers = true)]
    fixed_angle: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepKind {
    RandomUnitary,
    QuantumChannels,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<SweepKind>,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    channel: PathBuf,
    /// Largest completeness defect accepted.
    #[arg(long, default_value_t = coollab::tol::CPTP)]
    tol: f64,
}

#[derive(Debug, Args)]
struct TemperatureArgs {
    #[arg(long)]
    omega: f64,
    #[arg(long)]
    p1: f64,
    #[arg(long = "kb", default_value_t = 1.0)]
    k_b: f64,
    /// Final largest population; switches to a monotonicity check.
    #[arg(long)]
    q1: Option<f64>,
    /// Final gap, when it differs from the initial one.
    #[arg(long)]
    omega_f: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Grid,
    ProjectedGradient,
}

impl From<Method> for OptimizerMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Grid => OptimizerMethod::Grid,
            Method::ProjectedGradient => OptimizerMethod::ProjectedGradient,
        }
    }
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    /// Comma-separated angles.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    thetas: Vec<f64>,
    #[arg(long, value_enum, default_value = "grid")]
    method: Method,
    /// Iteration cap for the projected gradient.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
}

/// Outcome of a verb that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Negative,
}

fn dispatch(cli: Cli) -> Result<Verdict, String> {
    match cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Evolve(a) => commands::evolve(a),
        Command::Figure1(a) => commands::figure1(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Certify(a) => commands::certify(a),
        Command::Temperature(a) => commands::temperature(a),
        Command::Optimize(a) => commands::optimize(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(Verdict::Pass)) => ExitCode::SUCCESS,
        Ok(Ok(Verdict::Negative)) => ExitCode::from(1),
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(2)
        }
    }
}
