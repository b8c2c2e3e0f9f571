//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit status: 0 on success, 2 when a
//! solve did not converge, 1 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{LspError, Result};
use crate::experiments::{
    check_desk_scale, compare_variants, random_start_study, run_sweep, StartKind,
    VariantComparison,
};
use crate::io::{fixed10, records_to_csv, sci10, write_atomic, FitDocument, SolveDocument};
use crate::model::{build_problem, initial_point, ModelSpec, Parity, Variant};
use crate::regression::fit;
use crate::render::{render_svg, RenderOptions};
use crate::solver::{solve, SolverOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lsp-lab", version, about = "Largest small polygon optimization lab")]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "LSP_LAB_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and write its JSON (and optionally SVG).
    Solve(SolveArgs),
    /// Solve a list of instances and write a CSV table.
    Sweep(SweepArgs),
    /// Fit the asymptotic area model to a sweep CSV.
    Fit(FitArgs),
    /// Solve the standard and tightened models side by side.
    Compare(CompareArgs),
    /// Solve the standard model from seeded random starts.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = Variant::Tightened)]
    pub model: Variant,
    /// Impose mirror symmetry (even n only).
    #[arg(long)]
    pub symmetry: bool,
    /// Constraint violation target.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Start from a random configuration with this seed instead of the
    /// default start.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args, Clone)]
pub struct NSelection {
    /// Comma-separated list, e.g. `6,8,10`.
    #[arg(long, value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    /// Inclusive range of even n, e.g. `4..100`.
    #[arg(long)]
    pub even: Option<String>,
    /// Inclusive range of odd n, e.g. `5..99`.
    #[arg(long)]
    pub odd: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub select: NSelection,
    #[arg(long, default_value_t = Variant::Tightened)]
    pub model: Variant,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub parity: Parity,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub select: NSelection,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of starts (default: n).
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub allow_large: bool,
}

/// Parses `A..B` into the inclusive list of n in range with `parity`.
pub fn parse_range(text: &str, parity: Parity) -> Result<Vec<usize>> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| LspError::Invalid(format!("expected a range like 4..100, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| LspError::Invalid(format!("bad range bound {s:?} in {text:?}")))
    };
    let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
    if a > b {
        return Err(LspError::Invalid(format!("empty range {text:?}")));
    }
    Ok((a..=b).filter(|&n| Parity::of(n) == parity).collect())
}

impl NSelection {
    pub fn resolve(&self) -> Result<Vec<usize>> {
        let mut ns = Vec::new();
        if let Some(list) = &self.ns {
            ns.extend(list);
        }
        if let Some(r) = &self.even {
            ns.extend(parse_range(r, Parity::Even)?);
        }
        if let Some(r) = &self.odd {
            ns.extend(parse_range(r, Parity::Odd)?);
        }
        if ns.is_empty() {
            return Err(LspError::Invalid("no n selected; use --ns, --even or --odd".into()));
        }
        if let Some(&n) = ns.iter().find(|&&n| n < 3) {
            return Err(LspError::TooFewVertices(n));
        }
        Ok(ns)
    }
}

fn solver_options(tol: Option<f64>) -> SolverOptions {
    let mut opts = SolverOptions::default();
    if let Some(t) = tol {
        opts.violation_target = t;
    }
    opts
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_all(ns: &[usize], allow_large: bool) -> Result<()> {
    ns.iter().try_for_each(|&n| check_desk_scale(n, allow_large))
}

fn status(all_converged: bool) -> i32 {
    if all_converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    check_desk_scale(args.n, args.allow_large)?;
    let spec = ModelSpec::new(args.n, args.model)?.with_symmetry(args.symmetry)?;
    let opts = solver_options(args.tol);
    opts.validate()?;
    let problem = build_problem(&spec);
    let start = match args.seed {
        Some(seed) => crate::experiments::random_start(args.n, seed)?,
        None => initial_point(&spec),
    };
    let report = solve(&problem, &start, &opts)?;
    log::info!(
        "n = {} objective {} violation {} converged {}",
        args.n,
        fixed10(report.objective),
        sci10(report.max_violation),
        report.converged
    );
    let doc = SolveDocument::new(args.model, args.symmetry, &report);
    emit(args.json.as_deref(), &doc.to_json()?)?;
    if let Some(path) = &args.svg {
        write_atomic(path, render_svg(&report.config, &RenderOptions::default()).as_bytes())?;
    }
    Ok(status(report.converged))
}

fn cmd_sweep(args: &SweepArgs, workers: Option<usize>) -> Result<i32> {
    let ns = args.select.resolve()?;
    check_all(&ns, args.allow_large)?;
    let opts = solver_options(args.tol);
    opts.validate()?;
    let records = run_sweep(&ns, args.model, StartKind::PaperInit, &opts, workers)?;
    emit(args.csv.as_deref(), &records_to_csv(&records)?)?;
    Ok(status(records.iter().all(|r| r.converged)))
}

fn cmd_fit(args: &FitArgs) -> Result<i32> {
    let records = crate::io::read_csv(&args.csv)?;
    if records.iter().any(|r| !r.converged) {
        log::warn!("fitting records that did not converge");
    }
    let f = fit(&records, args.parity)?;
    emit(args.json.as_deref(), &FitDocument::new(&f, records.len()).to_json()?)?;
    Ok(EXIT_OK)
}

/// Comparison table as CSV text.
pub fn comparison_csv(rows: &[VariantComparison]) -> String {
    let mut out = String::from(
        "n,tightened_objective,standard_objective,tightened_gap,standard_gap,tightened_converged,standard_converged\n",
    );
    for c in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.n,
            fixed10(c.tightened.objective),
            fixed10(c.standard.objective),
            sci10(c.tightened_gap()),
            sci10(c.standard_gap()),
            c.tightened.converged,
            c.standard.converged
        );
    }
    out
}

fn cmd_compare(args: &CompareArgs, workers: Option<usize>) -> Result<i32> {
    let ns = args.select.resolve()?;
    check_all(&ns, args.allow_large)?;
    let opts = solver_options(args.tol);
    opts.validate()?;
    let rows = compare_variants(&ns, &opts, workers)?;
    emit(args.csv.as_deref(), &comparison_csv(&rows))?;
    Ok(status(rows.iter().all(|c| c.tightened.converged && c.standard.converged)))
}

fn cmd_random(args: &RandomArgs, workers: Option<usize>) -> Result<i32> {
    check_desk_scale(args.n, args.allow_large)?;
    let opts = solver_options(args.tol);
    opts.validate()?;
    let study = random_start_study(args.n, args.starts.unwrap_or(args.n), args.seed, &opts, workers)?;
    eprintln!(
        "n = {}: best {} worst {} spread {}",
        study.n,
        fixed10(study.best),
        fixed10(study.worst),
        sci10(study.spread())
    );
    emit(args.csv.as_deref(), &records_to_csv(&study.records)?)?;
    Ok(status(study.records.iter().all(|r| r.converged)))
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let workers = cli.workers;
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Sweep(a) => cmd_sweep(a, workers),
        Command::Fit(a) => cmd_fit(a),
        Command::Compare(a) => cmd_compare(a, workers),
        Command::Random(a) => cmd_random(a, workers),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
