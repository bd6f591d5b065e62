use std::io::Write;
use std::path::Path;

use serde::Serialize;

use coollab::channels::{certify_operators, theorem_check_with, ChannelDocument};
use coollab::experiments::{
    count_violations, emit_records, emit_sweep, maximize_y, records_to_csv, run_figure1, run_quantum_channel_sweep,
    run_theorem_sweep, to_json_string, ExperimentConfig, ModelSpec, ReportFormat, SweepReport,
};
use coollab::noise::NoisyParameter;
use coollab::temperature::{effective_temperature, temperature_monotonicity_check, TemperatureSpec};
use coollab::{tol, DensityMatrix, RngSeed};

use crate::input::{read_json, seed_from_env};
use crate::{
    CertifyArgs, EvolveArgs, Figure1Args, OptimizeArgs, SweepArgs, SweepKind, TemperatureArgs, Verdict, VerifyArgs,
};

const DEFAULT_SEED: u64 = 0;

fn fail(e: coollab::Error) -> String {
    e.to_string()
}

fn print_json<T: Serialize + ?Sized>(value: &T) -> Result<(), String> {
    emit_stdout(&to_json_string(value).map_err(fail)?)
}

fn emit_stdout(text: &str) -> Result<(), String> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| format!("stdout: {e}"))
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Negative
    }
}

/// Flag, then config file, then `COOLLAB_SEED`, then the built-in default.
fn resolve_seed(flag: Option<u64>, config: Option<RngSeed>) -> Result<RngSeed, String> {
    if let Some(s) = flag {
        return Ok(RngSeed::new(s, 0));
    }
    if let Some(s) = config {
        return Ok(s);
    }
    Ok(RngSeed::new(seed_from_env()?.unwrap_or(DEFAULT_SEED), 0))
}

fn load_config(path: Option<&Path>) -> Result<Option<ExperimentConfig>, String> {
    path.map(read_json::<ExperimentConfig>).transpose()
}

fn sweep_ok(r: &SweepReport) -> bool {
    r.violations == 0 && r.index_violations == 0
}

fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepReport, String> {
    match cfg.model {
        ModelSpec::RandomUnitary => run_theorem_sweep(cfg).map_err(fail),
        ModelSpec::QuantumChannels => run_quantum_channel_sweep(cfg).map_err(fail),
        ModelSpec::Stirap { .. } => Err("stirap configs are run with the figure1 verb".into()),
    }
}

fn summarize(label: &str, r: &SweepReport) {
    eprintln!(
        "{label}: {} trials, {} violations, worst margin {:.3e}",
        r.trials, r.violations, r.worst_margin
    );
}

pub fn verify(a: VerifyArgs) -> Result<Verdict, String> {
    #[derive(Serialize)]
    struct Verification {
        random_unitary: SweepReport,
        quantum_channels: SweepReport,
    }
    let file = load_config(a.config.as_deref())?;
    let seed = resolve_seed(a.seed, file.as_ref().map(|c| c.seed))?;
    let mut theorem = file.unwrap_or_else(|| ExperimentConfig::theorem_sweep(seed.seed, a.trials));
    theorem.seed = seed;
    if !matches!(theorem.model, ModelSpec::RandomUnitary) {
        return Err("verify needs a random_unitary config".into());
    }
    let channels = ExperimentConfig::quantum_channel_sweep(seed.seed, theorem.points);
    let v = Verification {
        random_unitary: run_sweep(&theorem)?,
        quantum_channels: run_sweep(&channels)?,
    };
    summarize("random_unitary", &v.random_unitary);
    summarize("quantum_channels", &v.quantum_channels);
    print_json(&v)?;
    Ok(verdict(sweep_ok(&v.random_unitary) && sweep_ok(&v.quantum_channels)))
}

pub fn evolve(a: EvolveArgs) -> Result<Verdict, String> {
    if !(a.tol >= 0.0 && a.tol.is_finite()) {
        return Err(format!("--tol must be nonnegative, got {}", a.tol));
    }
    let doc: ChannelDocument = read_json(&a.channel)?;
    let channel = doc.to_channel(tol::CPTP).map_err(fail)?;
    let rho: DensityMatrix = read_json(&a.state)?;
    let out = channel.apply(&rho).map_err(fail)?;
    let report = theorem_check_with(&rho, &out, a.tol).map_err(fail)?;
    if let Some(path) = &a.out {
        std::fs::write(path, to_json_string(&out).map_err(fail)?).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    print_json(&report)?;
    Ok(verdict(report.pass))
}

pub fn figure1(a: Figure1Args) -> Result<Verdict, String> {
    let file = load_config(a.config.as_deref())?;
    let seed = resolve_seed(a.seed, file.as_ref().map(|c| c.seed))?;
    let noisy = a.noisy.map(NoisyParameter::from);
    let mut cfg = match file {
        Some(cfg) => cfg,
        None => ExperimentConfig::figure1(noisy.unwrap_or(NoisyParameter::Theta), seed.seed),
    };
    cfg.seed = seed;
    if let Some(p) = a.points {
        cfg.points = p;
    }
    if let Some(r) = a.realizations {
        cfg.realizations = r;
    }
    if noisy.is_some() || a.fixed_angle.is_some() {
        let ModelSpec::Stirap { noisy: n, fixed_angle } = cfg.model else {
            return Err("figure1 needs a stirap model".into());
        };
        cfg.model = ModelSpec::Stirap {
            noisy: noisy.unwrap_or(n),
            fixed_angle: a.fixed_angle.or(fixed_angle),
        };
    }
    let records = run_figure1(&cfg).map_err(fail)?;
    let violations = count_violations(&records, cfg.tolerance);
    let format = ReportFormat::from(a.format);
    match a.out.as_ref().or(cfg.output_path.as_ref()) {
        Some(path) => emit_records(&records, path, format).map_err(fail)?,
        None => match format {
            ReportFormat::Csv => emit_stdout(&records_to_csv(&records))?,
            ReportFormat::Json => print_json(&records)?,
        },
    }
    eprintln!("{} points, {} violations", records.len(), violations);
    Ok(verdict(violations == 0))
}

pub fn sweep(a: SweepArgs) -> Result<Verdict, String> {
    let file = load_config(a.config.as_deref())?;
    let seed = resolve_seed(a.seed, file.as_ref().map(|c| c.seed))?;
    let trials = a.trials.unwrap_or(10_000);
    let mut cfg = match (file, a.kind) {
        (Some(cfg), _) => cfg,
        (None, Some(SweepKind::QuantumChannels)) => ExperimentConfig::quantum_channel_sweep(seed.seed, trials),
        (None, _) => ExperimentConfig::theorem_sweep(seed.seed, trials),
    };
    cfg.seed = seed;
    if let Some(t) = a.trials {
        cfg.points = t;
    }
    if let Some(d) = a.dims {
        cfg.dims = d;
    }
    match a.kind {
        Some(SweepKind::RandomUnitary) => cfg.model = ModelSpec::RandomUnitary,
        Some(SweepKind::QuantumChannels) => cfg.model = ModelSpec::QuantumChannels,
        None => {}
    }
    let report = run_sweep(&cfg)?;
    if let Some(path) = a.out.as_ref().or(cfg.output_path.as_ref()) {
        emit_sweep(&report, path, ReportFormat::from(a.format)).map_err(fail)?;
    }
    summarize("sweep", &report);
    print_json(&report)?;
    Ok(verdict(sweep_ok(&report)))
}

pub fn certify(a: CertifyArgs) -> Result<Verdict, String> {
    if !(a.tol >= 0.0 && a.tol.is_finite()) {
        return Err(format!("--tol must be nonnegative, got {}", a.tol));
    }
    let doc: ChannelDocument = read_json(&a.channel)?;
    let cert = certify_operators(&doc.kraus_operators().map_err(fail)?).map_err(fail)?;
    if cert.cptp_defect > a.tol {
        return Err(format!(
            "not trace preserving: completeness defect {:.3e} exceeds {:.3e}",
            cert.cptp_defect, a.tol
        ));
    }
    print_json(&cert)?;
    Ok(verdict(cert.cooling_impossible))
}

pub fn temperature(a: TemperatureArgs) -> Result<Verdict, String> {
    let initial = TemperatureSpec::new(a.omega, a.k_b).map_err(fail)?;
    let Some(q1) = a.q1 else {
        let t = effective_temperature(a.p1, &initial).map_err(fail)?;
        emit_stdout(&format!("{t}\n"))?;
        return Ok(Verdict::Pass);
    };
    let last = TemperatureSpec::new(a.omega_f.unwrap_or(a.omega), a.k_b).map_err(fail)?;
    let report = temperature_monotonicity_check(a.p1, q1, &initial, &last).map_err(fail)?;
    print_json(&report)?;
    Ok(verdict(report.holds))
}

pub fn optimize(a: OptimizeArgs) -> Result<Verdict, String> {
    let result = maximize_y(&a.thetas, a.method.into(), a.budget).map_err(fail)?;
    print_json(&result)?;
    Ok(Verdict::Pass)
}
