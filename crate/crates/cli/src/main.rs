mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rydinfo_core::audit::{AuditRecord, DEFAULT_AUDIT_TOL};
use rydinfo_core::quadrature::DEFAULT_ABS_TOL;
use rydinfo_core::report::{audit_state, compute_report, converge, Measure, MeasureReport, Relation};
use rydinfo_core::states::{QuantumState, Space, DEFAULT_MAX_N};
use rydinfo_core::Error;

use output::{Meta, WriteResult};

#[derive(Parser)]
#[command(name = "rydinfo", version, about = "Spreading and complexity measures of hydrogenic Rydberg states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measures for one state or a grid of states.
    Compute(ComputeArgs),
    /// Check uncertainty relations and printed closed forms over a grid.
    Audit(AuditArgs),
    /// Compare exact values with their large-n expansions.
    Converge(ConvergeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Position,
    Momentum,
    Both,
}

impl SpaceArg {
    fn spaces(self) -> Vec<Space> {
        match self {
            SpaceArg::Position => vec![Space::Position],
            SpaceArg::Momentum => vec![Space::Momentum],
            SpaceArg::Both => vec![Space::Position, Space::Momentum],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StatesArg {
    Circular,
    Quasicircular,
    AllLm,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = DEFAULT_ABS_TOL)]
    tol: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record the wall-clock time in JSON metadata.
    #[arg(long)]
    stamp: bool,
}

#[derive(Args)]
struct Grid {
    /// Inclusive range of principal quantum numbers, A:B.
    #[arg(long = "n-range", value_parser = parse_range)]
    n_range: Option<(u32, u32)>,
    #[arg(long, value_enum, default_value = "all-lm")]
    states: StatesArg,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m: i32,
    #[arg(long = "Z", default_value = "1", value_delimiter = ',')]
    z: Vec<f64>,
    /// Comma-separated measure names, e.g. shannon,fisher,r_moment:-1.
    #[arg(long, default_value = "shannon,fisher")]
    measures: String,
    #[arg(long, value_enum, default_value = "both")]
    space: SpaceArg,
    #[command(flatten)]
    grid: Grid,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    grid: Grid,
    #[arg(long = "Z", default_value = "1", value_delimiter = ',')]
    z: Vec<f64>,
    /// Comma-separated relation ids, or "all".
    #[arg(long, default_value = "all")]
    relations: String,
    /// Margin a row may fall below zero and still pass.
    #[arg(long = "audit-tol", default_value_t = DEFAULT_AUDIT_TOL)]
    audit_tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Quantity id, e.g. shannon-position or lmc-circular-momentum.
    #[arg(long)]
    quantity: String,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m: i32,
    #[arg(long = "Z", default_value_t = 1.0)]
    z: f64,
    #[arg(long, value_delimiter = ',', default_value = "20,40,80,160")]
    ns: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= A <= B, got {a}:{b}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl Failure {
    fn kind(&self) -> &str {
        match self {
            Failure::Core(e) => e.kind(),
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// n cap from RYDINFO_MAX_N, warning when it lifts the verified range.
fn max_n() -> Result<u32, Failure> {
    match std::env::var("RYDINFO_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => {
            let cap: u32 = v.parse().map_err(|_| Failure::Usage(format!("RYDINFO_MAX_N='{v}' is not an integer")))?;
            if cap > DEFAULT_MAX_N {
                eprintln!("warning: RYDINFO_MAX_N={cap} exceeds {DEFAULT_MAX_N}; accuracy beyond n = {DEFAULT_MAX_N} is not verified");
            }
            Ok(cap)
        }
    }
}

fn grid_states(range: (u32, u32), which: StatesArg, zs: &[f64], cap: u32) -> Result<Vec<QuantumState>, Failure> {
    let mut out = Vec::new();
    for &z in zs {
        for n in range.0..=range.1 {
            let lms: Vec<(u32, i32)> = match which {
                StatesArg::Circular => vec![(n - 1, (n - 1) as i32)],
                StatesArg::Quasicircular if n >= 2 => vec![(n - 2, (n - 2) as i32)],
                StatesArg::Quasicircular => vec![],
                StatesArg::AllLm => (0..n).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m))).collect(),
            };
            for (l, m) in lms {
                out.push(QuantumState::with_max_n(n, l, m, z, cap)?);
            }
        }
    }
    Ok(out)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(res: WriteResult) -> Result<(), Failure> {
    res.map_err(|e| Failure::Io(e.to_string()))
}

fn run_compute(a: ComputeArgs) -> Result<(), Failure> {
    let cap = max_n()?;
    let measures = Measure::parse_list(&a.measures)?;
    if measures.is_empty() {
        return Err(Failure::Usage("no measures requested".into()));
    }
    let states = match (a.n, a.grid.n_range) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --n or --n-range, not both".into())),
        (Some(n), None) => a
            .z
            .iter()
            .map(|&z| QuantumState::with_max_n(n, a.l, a.m, z, cap))
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(r)) => grid_states(r, a.grid.states, &a.z, cap)?,
        (None, None) => return Err(Failure::Usage("--n or --n-range is required".into())),
    };
    let jobs: Vec<(QuantumState, Space)> =
        states.iter().flat_map(|s| a.space.spaces().into_iter().map(move |sp| (*s, sp))).collect();
    let tol = a.common.tol;
    let reports: Vec<MeasureReport> = jobs.par_iter().map(|(s, sp)| compute_report(s, *sp, &measures, tol)).collect();
    let out = sink(&a.common.out)?;
    emit(match a.common.format {
        Format::Csv => output::reports_csv(out, &reports),
        Format::Json => output::reports_json(out, &Meta::new(tol, a.common.stamp), &reports),
    })
}

fn run_audit(a: AuditArgs) -> Result<(), Failure> {
    let cap = max_n()?;
    let relations = Relation::parse_list(&a.relations)?;
    let states = grid_states(a.grid.n_range.unwrap_or((1, 10)), a.grid.states, &a.z, cap)?;
    let tol = a.common.tol;
    // collect keeps grid order, so output does not depend on scheduling
    let audits: Vec<AuditRecord> = states
        .par_iter()
        .map(|s| audit_state(s, &relations, tol, a.audit_tol))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let failed = audits.iter().filter(|r| !r.pass).count();
    eprintln!("{} rows, {} failing", audits.len(), failed);
    let out = sink(&a.common.out)?;
    emit(match a.common.format {
        Format::Csv => output::audits_csv(out, &audits),
        Format::Json => output::audits_json(out, &Meta::new(tol, a.common.stamp), &audits),
    })
}

fn run_converge(a: ConvergeArgs) -> Result<(), Failure> {
    let cap = max_n()?;
    if let Some(&n) = a.ns.iter().find(|&&n| n > cap) {
        return Err(Failure::Core(Error::InvalidState(format!("n = {n} exceeds the cap {cap}"))));
    }
    let table = converge(&a.quantity, a.l, a.m, a.z, &a.ns, a.common.tol)?;
    let out = sink(&a.common.out)?;
    emit(match a.common.format {
        Format::Csv => output::converge_csv(out, &table),
        Format::Json => output::converge_json(out, &Meta::new(a.common.tol, a.common.stamp), &table),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Audit(a) => run_audit(a),
        Command::Converge(a) => run_converge(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let obj = serde_json::json!({ "error": { "kind": f.kind(), "message": f.message() } });
            eprintln!("{obj}");
            ExitCode::FAILURE
        }
    }
}
