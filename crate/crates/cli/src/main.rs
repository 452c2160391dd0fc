//! `neumann`: verification suites and simulations for the Neumann-like
//! integrable family on T*S^2.
//!
//! Reports go to stdout as JSON, a one-line summary goes to stderr.
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
//! configuration error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use neumann_core::dynamics::{self, drift_report, DriftThresholds, PhasePoint, SimConfig};
use neumann_core::e3::CommutationMode;
use neumann_core::report::{self, Status, SuiteOptions};

const SEED_ENV: &str = "NEUMANN_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "neumann",
    version,
    about = "Exact checks and simulations for Neumann-like systems on T*S^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Compare V_k against Wojciechowski's I_k modulo the sphere.
    CompareWojciechowski {
        /// Level to compare (2 or 3); both when omitted.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        k: Option<u32>,
    },
    /// Inspect the potential family.
    Potentials {
        #[command(subcommand)]
        action: PotentialsAction,
    },
    /// Integrate the flow of H_n numerically.
    Simulate(SimulateArgs),
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Poisson commutation {H_n, I_n} = 0 on the orbit.
    Classical {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Number of orbit points in points mode.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Operator commutation [H_n, I_n] = 0 on the sphere quotient.
    Quantum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Closed form, three-term relation and first-order identities.
    Recurrence {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
    },
    /// Everything above for n = 1..nmax, stopping at the first failure.
    All {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Symbolic,
    Points,
}

impl From<Mode> for CommutationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Symbolic => CommutationMode::Symbolic,
            Mode::Points => CommutationMode::Points,
        }
    }
}

#[derive(Subcommand, Debug)]
enum PotentialsAction {
    /// Print U_n and V_n.
    Print {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TrajectoryFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Parameters a1,a2,a3.
    #[arg(long, value_parser = parse_triple, default_value = "1,2,3")]
    a: [f64; 3],
    #[arg(long, default_value_t = 10.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    #[arg(long, default_value_t = 1e-10)]
    atol: f64,
    #[arg(long, default_value_t = 0.1)]
    sample_interval: f64,
    /// Seed for the initial condition (ignored when --x0 and --m0 are given).
    #[arg(long)]
    seed: Option<u64>,
    /// Initial X as x1,x2,x3; requires --m0.
    #[arg(long, value_parser = parse_triple, requires = "m0")]
    x0: Option<[f64; 3]>,
    /// Initial M as m1,m2,m3; requires --x0.
    #[arg(long, value_parser = parse_triple, requires = "x0")]
    m0: Option<[f64; 3]>,
    /// Skip re-projection onto the orbit after each accepted step.
    #[arg(long)]
    no_project: bool,
    /// Write the trajectory here.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TrajectoryFormat::Csv)]
    output_format: TrajectoryFormat,
    /// Pass threshold for the relative drift of H_n and I_n.
    #[arg(long, default_value_t = 1e-8)]
    max_rel_drift: f64,
    /// Pass threshold for |C1 - 1| and |C2|.
    #[arg(long, default_value_t = 1e-10)]
    max_orbit_defect: f64,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

/// Usage-level failure: maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

/// Flag beats environment, environment beats the default of 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64, UsageError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("{SEED_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(0),
    }
}

fn emit_json<T: Serialize>(value: &T) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()
}

fn summary(label: &str, status: Status) -> bool {
    let word = if status.passed() { "PASS" } else { "FAIL" };
    eprintln!("{word}: {label}");
    status.passed()
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    let io = |e: std::io::Error| UsageError(format!("output error: {e}"));
    match cli.command {
        Command::Verify { suite } => match suite {
            Suite::Classical { n, mode, count, seed } => {
                let seed = resolve_seed(seed)?;
                let r = report::classical_report(n, mode.into(), count, seed);
                emit_json(&r).map_err(io)?;
                let label = match &r.failed_identity {
                    Some(id) => format!("classical commutation, n = {n}: {id}"),
                    None => format!("classical commutation, n = {n}"),
                };
                Ok(summary(&label, r.status))
            }
            Suite::Quantum { n, max_degree } => {
                let r = report::quantum_report(n, max_degree);
                emit_json(&r).map_err(io)?;
                let mut label = format!("quantum commutation, n = {n}, degree <= {max_degree}");
                if let Some(id) = &r.failed_identity {
                    label.push_str(&format!(": {id}"));
                }
                Ok(summary(&label, r.status))
            }
            Suite::Recurrence { nmax } => {
                let r = report::recurrence_report(nmax);
                emit_json(&r).map_err(io)?;
                let mut label = format!("recurrence identities, n <= {nmax}");
                if let Some(e) = &r.error {
                    label.push_str(&format!(": {e}"));
                }
                Ok(summary(&label, r.status))
            }
            Suite::All {
                nmax,
                max_degree,
                count,
                seed,
            } => {
                let seed = resolve_seed(seed)?;
                let opts = SuiteOptions {
                    nmax,
                    max_degree,
                    count,
                    seed,
                };
                let r = report::suite_report(opts, |entry| {
                    let n = entry.n.map(|n| format!(" (n = {n})")).unwrap_or_default();
                    eprintln!("  {:?} {}{n}", entry.status, entry.check);
                });
                emit_json(&r).map_err(io)?;
                let label = match &r.failed {
                    Some(f) => format!("all suites up to n = {nmax}: failed at {f}"),
                    None => format!("all suites up to n = {nmax}"),
                };
                Ok(summary(&label, r.status))
            }
        },
        Command::CompareWojciechowski { k } => {
            let ks: Vec<u32> = k.map(|k| vec![k]).unwrap_or_else(|| vec![2, 3]);
            let reports = ks
                .iter()
                .map(|&k| report::wojciechowski_report(k))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| UsageError(e.to_string()))?;
            emit_json(&reports).map_err(io)?;
            let mut ok = true;
            for r in &reports {
                for c in &r.checks {
                    summary(&format!("k = {}: {}", r.k, c.identity), c.status);
                }
                ok &= r.status.passed();
            }
            Ok(ok)
        }
        Command::Potentials {
            action: PotentialsAction::Print { n, format },
        } => {
            let r = report::potential_report(n).map_err(|e| UsageError(e.to_string()))?;
            match format {
                Format::Json => emit_json(&r).map_err(io)?,
                Format::Text => {
                    let stdout = std::io::stdout();
                    let mut out = stdout.lock();
                    out.write_all(r.to_text().as_bytes()).map_err(io)?;
                }
            }
            Ok(true)
        }
        Command::Simulate(args) => simulate(args),
    }
}

#[derive(Serialize)]
struct SimulationReport {
    config: SimConfig,
    initial: PhasePoint,
    #[serde(rename = "final")]
    final_point: PhasePoint,
    #[serde(flatten)]
    drift: dynamics::DriftReport,
}

fn simulate(args: SimulateArgs) -> Result<bool, UsageError> {
    let seed = resolve_seed(args.seed)?;
    let cfg = SimConfig {
        n: args.n,
        a: args.a,
        t_end: args.t_end,
        rtol: args.rtol,
        atol: args.atol,
        project_every_step: !args.no_project,
        sample_interval: args.sample_interval,
        seed,
    };
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;
    let p0 = match (args.x0, args.m0) {
        (Some(x), Some(m)) => PhasePoint::new(x, m),
        _ => dynamics::initial_condition(seed),
    };
    let tr = match dynamics::integrate(&cfg, &p0) {
        Ok(tr) => tr,
        Err(e @ (dynamics::DynamicsError::StepUnderflow { .. } | dynamics::DynamicsError::NonFinite { .. })) => {
            eprintln!("FAIL: integration aborted: {e}");
            return Ok(false);
        }
        Err(e) => return Err(UsageError(e.to_string())),
    };
    if let Some(path) = &args.output {
        let file = File::create(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        match args.output_format {
            TrajectoryFormat::Csv => tr.write_csv(&mut w),
            TrajectoryFormat::Json => serde_json::to_writer_pretty(&mut w, &tr).map_err(std::io::Error::from),
        }
        .and_then(|_| w.flush())
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    let thresholds = DriftThresholds {
        rel_h: args.max_rel_drift,
        rel_i: args.max_rel_drift,
        abs_c1: args.max_orbit_defect,
        abs_c2: args.max_orbit_defect,
    };
    let report = SimulationReport {
        config: cfg,
        initial: p0,
        final_point: *tr.final_point(),
        drift: drift_report(&tr, &thresholds),
    };
    emit_json(&report).map_err(|e| UsageError(format!("output error: {e}")))?;
    let d = &report.drift.drift;
    let status = if report.drift.passed() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(summary(
        &format!(
            "simulate n = {}: max rel dH {:.3e}, max rel dI {:.3e}, |C1-1| {:.3e}, |C2| {:.3e}",
            report.config.n, d.max_rel_dh, d.max_rel_di, report.drift.max_abs_c1_defect, report.drift.max_abs_c2
        ),
        status,
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            eprintln!("\n{}", Cli::command().render_usage());
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
    }
}
