//! Parameter sweeps, log-log slope estimates, model comparisons and
//! random-start studies.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LspError, Result};
use crate::model::{build_problem, initial_point, ModelSpec, Parity, PolygonConfig, Variant};
use crate::solver::{solve, SolveReport, SolverOptions};

/// Largest n run without an explicit opt-in.
pub const DESK_SCALE_MAX_N: usize = 100;

/// Tabulated even selection used for the even slope fit.
pub const EVEN_SELECTION: &[usize] = &[
    4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 70, 80, 90, 100, 110, 120,
    130, 140, 150,
];

/// Tabulated odd selection used for the odd slope fit.
pub const ODD_SELECTION: &[usize] = &[
    3, 5, 7, 9, 11, 13, 15, 17, 19, 23, 27, 31, 35, 39, 43, 47, 51, 55, 59, 69, 79, 89, 99, 109, 119,
    129, 139, 149,
];

/// Rejects `n` above [`DESK_SCALE_MAX_N`] unless `allow_large` is set.
pub fn check_desk_scale(n: usize, allow_large: bool) -> Result<()> {
    if n > DESK_SCALE_MAX_N && !allow_large {
        return Err(LspError::Invalid(format!(
            "n = {n} exceeds the desk-scale cap of {DESK_SCALE_MAX_N}; pass --allow-large to run it"
        )));
    }
    Ok(())
}

/// Where a solve started.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StartKind {
    PaperInit,
    Random(u64),
}

impl fmt::Display for StartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartKind::PaperInit => f.write_str("paper"),
            StartKind::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for StartKind {
    type Err = LspError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "paper" {
            return Ok(StartKind::PaperInit);
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(StartKind::Random)
            .ok_or_else(|| LspError::Invalid(format!("unknown start kind {s:?}")))
    }
}

impl From<StartKind> for String {
    fn from(kind: StartKind) -> Self {
        kind.to_string()
    }
}

impl TryFrom<String> for StartKind {
    type Error = LspError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// One row of a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    #[serde(rename = "variables")]
    pub num_vars: usize,
    #[serde(rename = "constraints")]
    pub num_constraints: usize,
    pub runtime_seconds: f64,
    pub objective: f64,
    pub max_violation: f64,
    pub variant: Variant,
    #[serde(rename = "start")]
    pub start_kind: StartKind,
    pub converged: bool,
}

impl SweepRecord {
    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    /// `π/4 - objective`.
    pub fn gap(&self) -> f64 {
        FRAC_PI_4 - self.objective
    }
}

/// Random start: sorted uniform angles in `(0, π)`, radii uniform in
/// `(0.5, 1)`, fixed vertex last.
pub fn random_start(n: usize, seed: u64) -> Result<PolygonConfig> {
    if n < 3 {
        return Err(LspError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(f64::EPSILON..PI)).collect();
    theta.sort_by(f64::total_cmp);
    let r = (0..n - 1).map(|_| rng.gen_range(0.5..1.0)).collect();
    PolygonConfig::from_free(r, theta)
}

/// Solves one instance and returns both the table row and the full report.
pub fn solve_instance(
    n: usize,
    variant: Variant,
    start: StartKind,
    opts: &SolverOptions,
) -> Result<(SweepRecord, SolveReport)> {
    let spec = ModelSpec::new(n, variant)?;
    let problem = build_problem(&spec);
    let config = match start {
        StartKind::PaperInit => initial_point(&spec),
        StartKind::Random(seed) => random_start(n, seed)?,
    };
    let report = solve(&problem, &config, opts)?;
    let record = SweepRecord {
        n,
        num_vars: problem.num_vars(),
        num_constraints: problem.num_constraints(),
        runtime_seconds: report.runtime_seconds,
        objective: report.objective,
        max_violation: report.max_violation,
        variant,
        start_kind: start,
        converged: report.converged,
    };
    Ok((record, report))
}

/// Runs `jobs` on a pool of `workers` threads (all cores when `None`),
/// keeping the input order.
fn run_pool<T, R, F>(jobs: &[T], workers: Option<usize>, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(LspError::Invalid("worker count must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| LspError::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(&f).collect())
}

/// One record per `n`, in input order. Non-converged solves are flagged in
/// the record, not reported as errors.
pub fn run_sweep(
    ns: &[usize],
    variant: Variant,
    start: StartKind,
    opts: &SolverOptions,
    workers: Option<usize>,
) -> Result<Vec<SweepRecord>> {
    run_pool(ns, workers, |&n| solve_instance(n, variant, start, opts).map(|(rec, _)| rec))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub parity: Parity,
    pub n_min: usize,
    pub n_max: usize,
    pub slope: f64,
    pub intercept: f64,
    pub rmse: f64,
}

/// Least-squares line through `(ln n, ln(π/4 - A(n)))` for the records of
/// one parity.
pub fn estimate_slope(records: &[SweepRecord], parity: Parity) -> Result<SlopeEstimate> {
    let points: Vec<(usize, f64)> = records
        .iter()
        .filter(|r| r.parity() == parity)
        .map(|r| (r.n, r.objective))
        .collect();
    slope_of(&points, parity)
}

/// [`estimate_slope`] on bare `(n, A(n))` pairs.
pub fn slope_of(points: &[(usize, f64)], parity: Parity) -> Result<SlopeEstimate> {
    if points.len() < 5 {
        return Err(LspError::Invalid(format!(
            "slope estimate needs at least 5 {parity} points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, _)) = points.iter().find(|(n, _)| Parity::of(*n) != parity) {
        return Err(LspError::Parity(format!("n = {n} in a {parity} slope estimate")));
    }
    if let Some(&(n, a)) = points.iter().find(|(_, a)| !(FRAC_PI_4 - a > 0.0)) {
        return Err(LspError::Invalid(format!("A({n}) = {a} is not below π/4")));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, a)| ((n as f64).ln(), (FRAC_PI_4 - a).ln()))
        .collect();
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LspError::Invalid("slope estimate needs distinct n".into()));
    }
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rmse = (xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / k).sqrt();
    Ok(SlopeEstimate {
        parity,
        n_min: points.iter().map(|p| p.0).min().unwrap_or(0),
        n_max: points.iter().map(|p| p.0).max().unwrap_or(0),
        slope,
        intercept,
        rmse,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantComparison {
    pub n: usize,
    pub tightened: SweepRecord,
    pub standard: SweepRecord,
}

impl VariantComparison {
    pub fn tightened_gap(&self) -> f64 {
        self.tightened.gap()
    }

    pub fn standard_gap(&self) -> f64 {
        self.standard.gap()
    }
}

/// Solves both models from the default start for every even `n`.
pub fn compare_variants(
    ns: &[usize],
    opts: &SolverOptions,
    workers: Option<usize>,
) -> Result<Vec<VariantComparison>> {
    if let Some(&n) = ns.iter().find(|&&n| n % 2 == 1) {
        return Err(LspError::Parity(format!("model comparison runs on even n, got {n}")));
    }
    let jobs: Vec<(usize, Variant)> = ns
        .iter()
        .flat_map(|&n| [(n, Variant::Tightened), (n, Variant::Standard)])
        .collect();
    let records = run_pool(&jobs, workers, |&(n, v)| {
        solve_instance(n, v, StartKind::PaperInit, opts).map(|(rec, _)| rec)
    })?;
    Ok(records
        .chunks_exact(2)
        .map(|pair| VariantComparison { n: pair[0].n, tightened: pair[0].clone(), standard: pair[1].clone() })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomStudy {
    pub n: usize,
    /// One record per start; start `i` uses seed `seed + i`.
    pub records: Vec<SweepRecord>,
    pub best: f64,
    pub worst: f64,
}

impl RandomStudy {
    pub fn spread(&self) -> f64 {
        self.best - self.worst
    }
}

/// `count` solves of the standard model from seeded random starts.
pub fn random_start_study(
    n: usize,
    count: usize,
    seed: u64,
    opts: &SolverOptions,
    workers: Option<usize>,
) -> Result<RandomStudy> {
    if count == 0 {
        return Err(LspError::Invalid("random-start study needs at least one start".into()));
    }
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let records = run_pool(&seeds, workers, |&s| {
        solve_instance(n, Variant::Standard, StartKind::Random(s), opts).map(|(rec, _)| rec)
    })?;
    let best = records.iter().map(|r| r.objective).fold(f64::NEG_INFINITY, f64::max);
    let worst = records.iter().map(|r| r.objective).fold(f64::INFINITY, f64::min);
    Ok(RandomStudy { n, records, best, worst })
}
