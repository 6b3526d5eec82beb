mod input;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use sis_lne::graph::{build_g0, build_t, emit_dot, emit_json, DualGraph, GraphError};
use sis_lne::numeric::contact::eps_grid;
use sis_lne::numeric::{claim2_experiment, outer_contact_slope, NumericError, Precision, DEFAULT_DIGITS};
use sis_lne::report::CheckReport;
use sis_lne::sis::{decide_lne, SisReport};

use input::{Emit, InputDocument};

/// Exit codes.
mod code {
    pub const MISMATCH: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const NOT_SIS: u8 = 3;
    pub const NOT_LNE: u8 = 4;
    pub const NO_FACTORS: u8 = 5;
    pub const NUMERIC: u8 = 6;
}

/// An error that carries its own exit code.
#[derive(Debug)]
struct Fail(u8, String);

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Fail {}

fn fail<T>(code: u8, msg: impl Into<String>) -> Result<T> {
    Err(Fail(code, msg.into()).into())
}

#[derive(Parser)]
#[command(name = "sis-lne", version, about = "Decide Lipschitz normal embedding of superisolated surface singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum YesNo {
    Yes,
    No,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "T")]
    T,
    #[value(name = "G0")]
    G0,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the verdict report as JSON, with a summary on stderr.
    Check {
        file: PathBuf,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long)]
        expect: Option<YesNo>,
        /// Exit with status 3 when the input is not superisolated.
        #[arg(long)]
        require_sis: bool,
    },
    /// Emit the tree T or the graph G0.
    Graphs {
        file: PathBuf,
        #[arg(long)]
        which: Which,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Resultant identity experiment for the pencil polynomials.
    Claim2 {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Measure the outer contact exponent between two lifted branches.
    Contact {
        file: PathBuf,
        /// Index into the `points` list of the check report.
        #[arg(long, default_value_t = 0)]
        point: usize,
        #[arg(long, value_parser = parse_pair, default_value = "0,1")]
        pair: (usize, usize),
        /// Index into the fixed mu sequence; by default the first generic one.
        #[arg(long)]
        mu: Option<usize>,
        /// Log-spaced grid `a,b,n` of target sizes.
        #[arg(long, value_parser = parse_grid, default_value = "1e-5,1e-2,7")]
        eps_grid: (f64, f64, usize),
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected J,L")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else {
        return Err("expected a,b,n".into());
    };
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t}: {e}"));
    Ok((num(a)?, num(b)?, n.parse().map_err(|e| format!("{n}: {e}"))?))
}

fn load(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()));
    let doc = text.and_then(|t| InputDocument::parse(&t));
    doc.map_err(|e| Fail(code::INVALID, format!("{e:#}")).into())
}

fn analyse(doc: &InputDocument) -> Result<SisReport> {
    let input = doc.to_input().map_err(|e| Fail(code::INVALID, format!("{e:#}")))?;
    decide_lne(&input).map_err(|e| Fail(code::INVALID, e.to_string()).into())
}

fn precision(doc: Option<&InputDocument>) -> Result<Precision> {
    let digits = match std::env::var("SIS_PRECISION") {
        Ok(v) => v.trim().parse().map_err(|_| Fail(code::INVALID, format!("SIS_PRECISION={v} is not a digit count")))?,
        Err(_) => doc.and_then(|d| d.options.precision).unwrap_or(DEFAULT_DIGITS),
    };
    Ok(Precision::from_digits(digits))
}

fn graph(report: &SisReport, which: Which) -> Result<DualGraph> {
    let built = match which {
        Which::T => build_t(report),
        Which::G0 => build_g0(report),
    };
    built.map_err(|e| {
        let c = match e {
            GraphError::NotLne => code::NOT_LNE,
            GraphError::MissingComponents => code::NO_FACTORS,
            _ => code::INVALID,
        };
        Fail(c, e.to_string()).into()
    })
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn check(file: &Path, expect: Option<YesNo>, require_sis: bool) -> Result<u8> {
    let doc = load(file)?;
    let report = analyse(&doc)?;
    let summary = CheckReport::new(&report);
    let mut json = serde_json::to_value(&summary)?;
    let mut graphs = serde_json::Map::new();
    for (emit, which, name) in [(Emit::T, Which::T, "T"), (Emit::G0, Which::G0, "G0")] {
        if doc.wants(emit) {
            match graph(&report, which) {
                Ok(g) => {
                    graphs.insert(name.into(), serde_json::from_str::<Value>(&emit_json(&g))?);
                }
                Err(e) => eprintln!("{name} not emitted: {e}"),
            }
        }
    }
    if !graphs.is_empty() {
        json["graphs"] = Value::Object(graphs);
    }
    print!("{}", pretty(&json)?);
    eprintln!("{}", summary.summary());
    if require_sis && !report.superisolated {
        return fail(code::NOT_SIS, "input is not superisolated");
    }
    if let Some(e) = expect {
        let want = matches!(e, YesNo::Yes);
        if report.lne != Some(want) {
            return fail(code::MISMATCH, format!("expected lne = {}, got {:?}", if want { "yes" } else { "no" }, report.lne));
        }
    }
    Ok(0)
}

fn graphs(file: &Path, which: Which, format: Format, output: Option<&Path>) -> Result<u8> {
    let doc = load(file)?;
    let report = analyse(&doc)?;
    let g = graph(&report, which)?;
    let text = match format {
        Format::Dot => emit_dot(&g),
        Format::Json => emit_json(&g),
    };
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn claim2(k: usize, trials: usize, seed: u64) -> Result<u8> {
    let report = claim2_experiment(k, trials, seed).map_err(|e| Fail(code::INVALID, e.to_string()))?;
    print!("{}", pretty(&report)?);
    Ok(if report.pass { 0 } else { code::MISMATCH })
}

fn contact(file: &Path, point: usize, pair: (usize, usize), mu: Option<usize>, grid: (f64, f64, usize)) -> Result<u8> {
    let doc = load(file)?;
    let prec = precision(Some(&doc))?;
    let report = analyse(&doc)?;
    if report.lne != Some(true) {
        return fail(code::NOT_LNE, "contact exponents need an LNE input with ordinary points");
    }
    let record = match report.points.get(point) {
        Some(p) => &p.record,
        None => return fail(code::INVALID, NumericError::BadPoint(point).to_string()),
    };
    let (a, b, n) = grid;
    let eps = eps_grid(a.min(b), a.max(b), n);
    let input = doc.to_input()?;
    let estimate = outer_contact_slope(&input, record, pair, mu, &eps, &prec).map_err(|e| {
        let c = match e {
            NumericError::BadPair(..) | NumericError::BadGrid | NumericError::MuExhausted => code::INVALID,
            _ => code::NUMERIC,
        };
        Fail(c, e.to_string())
    })?;
    print!("{}", pretty(&estimate)?);
    eprintln!(
        "slope {:.5} against target {} (relative error {:.3}%), {} digits",
        estimate.slope,
        sis_lne::algebra::fmt_rational(&estimate.target),
        100.0 * estimate.relative_error,
        estimate.digits
    );
    if !estimate.stable {
        return fail(code::NUMERIC, "slope changes under halving the grid; raise SIS_PRECISION");
    }
    Ok(if estimate.pass { 0 } else { code::MISMATCH })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { file, expect, require_sis } => check(&file, expect, require_sis),
        Command::Graphs { file, which, format, output } => graphs(&file, which, format, output.as_deref()),
        Command::Claim2 { k, trials, seed } => claim2(k, trials, seed),
        Command::Contact { file, point, pair, mu, eps_grid } => contact(&file, point, pair, mu, eps_grid),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.downcast_ref::<Fail>().map_or(code::INVALID, |f| f.0))
        }
    }
}
