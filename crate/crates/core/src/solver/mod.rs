//! Augmented Lagrangian solver for [`NlpProblem`].
//!
//! Inequalities `g(x) <= 0` enter through the Rockafellar form
//!
//! ```text
//! L(x, λ, ρ) = -area(x) + (ρ/2) Σ_k [ max(0, λ_k/ρ + g_k(x))² - (λ_k/ρ)² ]
//! ```
//!
//! which is minimized over the variable box by [`inner_minimize`]. After each
//! inner solve the multipliers move to `max(0, λ + ρ g)` and the penalty grows
//! only when the violation failed to shrink fourfold.

mod lbfgs;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{LspError, Result};
use crate::model::{Constraint, NlpProblem, PolygonConfig};

pub use lbfgs::{inner_minimize, projected_gradient_norm, InnerOptions, InnerResult, InnerStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub outer_max: usize,
    pub inner_max: usize,
    pub penalty_init: f64,
    pub penalty_growth: f64,
    pub violation_target: f64,
    pub stationarity_target: f64,
    pub lbfgs_memory: usize,
    /// Seed for randomized starting points (consumed by the experiment
    /// drivers, not by [`solve`] itself).
    pub seed: u64,
    /// Inner tolerance of the first outer iteration; divided by ten each
    /// outer iteration down to `stationarity_target`.
    pub inner_tol_init: f64,
    /// Shrink the final radii so every distance row holds exactly.
    pub rescale_to_feasible: bool,
    /// Initial weight of the log-barrier on the angle-gap rows; zero
    /// disables the barrier phase.
    pub gap_barrier_init: f64,
    /// Factor applied to the barrier weight after each outer iteration.
    pub gap_barrier_decay: f64,
    /// Shrink the start's radii so it satisfies every distance row before
    /// the first inner solve.
    pub prescale_start: bool,
    /// Extra outer iterations spent reducing the violation after convergence.
    pub polish_outer: usize,
    /// Initial barrier weight of the centering pass run after convergence;
    /// zero disables it.
    pub center_barrier: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            outer_max: 50,
            inner_max: 3000,
            penalty_init: 10.0,
            penalty_growth: 10.0,
            violation_target: 1e-9,
            stationarity_target: 1e-8,
            lbfgs_memory: 10,
            seed: 0,
            inner_tol_init: 1e-4,
            rescale_to_feasible: true,
            gap_barrier_init: 1e-2,
            gap_barrier_decay: 0.1,
            prescale_start: true,
            polish_outer: 3,
            center_barrier: 1e-6,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("penalty_init", self.penalty_init),
            ("violation_target", self.violation_target),
            ("stationarity_target", self.stationarity_target),
            ("inner_tol_init", self.inner_tol_init),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(LspError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.penalty_growth > 1.0) {
            return Err(LspError::Invalid(format!(
                "penalty_growth must exceed 1, got {}",
                self.penalty_growth
            )));
        }
        if self.outer_max == 0 || self.inner_max == 0 || self.lbfgs_memory == 0 {
            return Err(LspError::Invalid("iteration limits and memory must be non-zero".into()));
        }
        Ok(())
    }
}

/// State after one outer iteration, before the multiplier update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OuterStep {
    pub area: f64,
    pub violation: f64,
    pub penalty: f64,
    pub inner_tol: f64,
    pub projected_gradient: f64,
    pub inner_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub config: PolygonConfig,
    /// `area(config)`.
    pub objective: f64,
    /// `problem.max_violation(config)`.
    pub max_violation: f64,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub runtime_seconds: f64,
    /// The last augmented Lagrangian subproblem reached the stationarity
    /// target and its solution met the violation target. Both are checked on
    /// the iterate before the final radius rescaling.
    pub converged: bool,
    pub history: Vec<OuterStep>,
}

/// Penalty part of the augmented Lagrangian for given constraint values.
pub fn al_penalty(values: &[f64], multipliers: &[f64], penalty: f64) -> f64 {
    values
        .iter()
        .zip(multipliers)
        .map(|(&g, &lambda)| {
            let t = (lambda + penalty * g).max(0.0);
            (t * t - lambda * lambda) / (2.0 * penalty)
        })
        .sum()
}

/// Value and gradient of the augmented Lagrangian (minimizing `-area`).
pub fn augmented_lagrangian_value_and_gradient(
    problem: &NlpProblem,
    x: &[f64],
    multipliers: &[f64],
    penalty: f64,
    grad: &mut [f64],
) -> f64 {
    let mut g = vec![0.0; problem.num_constraints()];
    let mut weights = vec![0.0; problem.num_constraints()];
    al_eval(problem, x, multipliers, penalty, &[], 0.0, grad, &mut g, &mut weights)
}

fn al_eval(
    problem: &NlpProblem,
    x: &[f64],
    multipliers: &[f64],
    penalty: f64,
    barrier_rows: &[(usize, f64)],
    mu: f64,
    grad: &mut [f64],
    g: &mut [f64],
    weights: &mut [f64],
) -> f64 {
    let (area, point) = problem.evaluate(x, grad, g);
    grad.iter_mut().for_each(|v| *v = -*v);
    let mut value = -area;
    for ((w, &gk), &lambda) in weights.iter_mut().zip(g.iter()).zip(multipliers) {
        let t = lambda + penalty * gk;
        if t > 0.0 {
            value += (t * t - lambda * lambda) / (2.0 * penalty);
            *w = t;
        } else {
            value -= lambda * lambda / (2.0 * penalty);
            *w = 0.0;
        }
    }
    if mu > 0.0 {
        for &(k, scale) in barrier_rows {
            if g[k] >= 0.0 {
                return f64::INFINITY;
            }
            value -= mu * scale * (-g[k]).ln();
            weights[k] -= mu * scale / g[k];
        }
    }
    problem.add_jt_product_cached(&point, weights, grad);
    value
}

/// First-order multiplier step `λ ← max(0, λ + ρ g)`.
pub fn update_multipliers(multipliers: &mut [f64], constraint_values: &[f64], penalty: f64) {
    for (lambda, &g) in multipliers.iter_mut().zip(constraint_values) {
        *lambda = (*lambda + penalty * g).max(0.0);
    }
}

/// Grows the penalty unless the violation shrank at least fourfold.
pub fn next_penalty(penalty: f64, growth: f64, violation: f64, previous_violation: f64) -> f64 {
    if violation > 0.25 * previous_violation {
        penalty * growth
    } else {
        penalty
    }
}

fn max_positive(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |m, &v| m.max(v))
}

/// Scales the radii down just enough that no distance row is violated.
fn rescale(problem: &NlpProblem, config: &PolygonConfig) -> PolygonConfig {
    let worst = problem
        .constraints()
        .iter()
        .filter_map(|c| match *c {
            Constraint::Distance { i, j } => config.pair_distance_sq(i, j).ok(),
            Constraint::AngleGap { .. } => None,
        })
        .chain(config.r().iter().map(|r| r * r))
        .fold(1.0f64, f64::max);
    if worst <= 1.0 {
        return config.clone();
    }
    let mut scaled = config.scaled(1.0 / worst.sqrt());
    // guard against the product rounding a hair above one
    let mut guard = 0;
    while guard < 8 && problem.max_violation(&scaled).map(|v| v > 0.0).unwrap_or(false) {
        let factor = 1.0 - 2.0 * f64::EPSILON;
        scaled = scaled.scaled(factor);
        guard += 1;
    }
    scaled
}

const BARRIER_CUTOFF: f64 = 1e-12;
const POLISH_VIOLATION: f64 = 1e-13;
/// Relative radius shrink applied before centering.
const CENTER_SHRINK: f64 = 1e-6;
/// Area the centered solution may give up and still be kept.
const CENTER_AREA_SLACK: f64 = 1e-12;

/// Angle-gap rows that involve at least one free variable.
fn movable_gap_rows(problem: &NlpProblem) -> Vec<usize> {
    let (lower, upper) = (problem.lower(), problem.upper());
    problem
        .constraints()
        .iter()
        .enumerate()
        .filter(|(k, c)| {
            matches!(c, Constraint::AngleGap { .. })
                && problem.row_variables(*k).iter().any(|&v| lower[v] < upper[v])
        })
        .map(|(k, _)| k)
        .collect()
}

fn movable_rows(problem: &NlpProblem) -> Vec<usize> {
    let (lower, upper) = (problem.lower(), problem.upper());
    (0..problem.num_constraints())
        .filter(|&k| problem.row_variables(k).iter().any(|&v| lower[v] < upper[v]))
        .collect()
}

/// Spreads the angles about the vertical axis so that angle gaps sitting
/// exactly on their lower bound move strictly inside. Angles stay within
/// `[0, π]` and `π/2` is a fixed point, so fixed middle angles and mirror
/// relations are preserved.
fn push_gaps_inside(problem: &NlpProblem, x: &[f64]) -> Vec<f64> {
    use std::f64::consts::FRAC_PI_2;
    let config = problem.config_from_vars(x);
    let n = config.n();
    let reach = config.theta()[..n - 1]
        .iter()
        .map(|t| (t - FRAC_PI_2).abs())
        .fold(0.0f64, f64::max);
    if reach == 0.0 {
        return x.to_vec();
    }
    let stretch = 1.0 + 0.5 * (FRAC_PI_2 / reach - 1.0);
    let theta: Vec<f64> = config.theta()[..n - 1]
        .iter()
        .map(|t| (FRAC_PI_2 + (t - FRAC_PI_2) * stretch).clamp(0.0, std::f64::consts::PI))
        .collect();
    let spread = PolygonConfig::from_free(config.r()[..n - 1].to_vec(), theta)
        .expect("dimensions preserved");
    let mut out = problem.vars_from_config(&spread).expect("dimensions preserved");
    for ((v, &lo), &hi) in out.iter_mut().zip(problem.lower()).zip(problem.upper()) {
        *v = v.clamp(lo, hi);
    }
    out
}

/// Solves `problem` from `start`.
///
/// Non-convergence is reported through [`SolveReport::converged`]; the
/// report then carries the least-violated iterate seen. Errors are returned
/// only for invalid options or a start of the wrong dimension.
pub fn solve(problem: &NlpProblem, start: &PolygonConfig, opts: &SolverOptions) -> Result<SolveReport> {
    opts.validate()?;
    let mut x = problem.vars_from_config(start)?;
    let timer = Instant::now();
    let (lower, upper) = (problem.lower(), problem.upper());
    for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
    if opts.prescale_start {
        x = problem.vars_from_config(&rescale(problem, &problem.config_from_vars(&x)))?;
    }

    let m = problem.num_constraints();
    let mut barrier_rows = Vec::new();
    let mut mu = 0.0;
    if opts.gap_barrier_init > 0.0 {
        barrier_rows = movable_gap_rows(problem);
        if !barrier_rows.is_empty() {
            x = push_gaps_inside(problem, &x);
            if strictly_inside(problem, &x, &barrier_rows) {
                mu = opts.gap_barrier_init;
            } else {
                log::debug!("start not interior to the angle-gap rows; barrier phase skipped");
            }
        }
    }
    let mut phase = Phase {
        x,
        multipliers: vec![0.0; m],
        penalty: opts.penalty_init,
        history: Vec::new(),
        inner_total: 0,
        converged: false,
    };
    let barrier: Vec<(usize, f64)> = barrier_rows.iter().map(|&k| (k, 1.0)).collect();
    run_phase(problem, &mut phase, &barrier, mu, opts.inner_tol_init, opts);

    let mut config = problem.config_from_vars(&phase.x);
    if opts.rescale_to_feasible {
        config = rescale(problem, &config);
    }
    if phase.converged && opts.center_barrier > 0.0 {
        if let Some(centered) = center(problem, &mut phase, &config, opts)? {
            config = centered;
        }
    }
    let runtime_seconds = timer.elapsed().as_secs_f64();
    let max_violation = problem.max_violation(&config)?;
    Ok(SolveReport {
        objective: config.area(),
        config,
        max_violation,
        outer_iterations: phase.history.len(),
        inner_iterations: phase.inner_total,
        runtime_seconds,
        converged: phase.converged,
        history: phase.history,
    })
}

fn strictly_inside(problem: &NlpProblem, x: &[f64], rows: &[usize]) -> bool {
    let mut g = vec![0.0; problem.num_constraints()];
    problem.constraint_values(x, &mut g);
    rows.iter().all(|&k| g[k] < 0.0)
}

/// Re-solves from a slightly shrunken copy of a converged `config` with a
/// vanishing barrier on every movable row. Where the maximizer is not
/// isolated this moves it away from the boundary of the optimal set. The
/// result is kept only if it converges without losing area.
fn center(
    problem: &NlpProblem,
    phase: &mut Phase,
    config: &PolygonConfig,
    opts: &SolverOptions,
) -> Result<Option<PolygonConfig>> {
    let start = problem.vars_from_config(&config.scaled(1.0 - CENTER_SHRINK))?;
    let mut g = vec![0.0; problem.num_constraints()];
    problem.constraint_values(&start, &mut g);
    let rows: Vec<(usize, f64)> =
        movable_rows(problem).into_iter().filter(|&k| g[k] < 0.0).map(|k| (k, 1.0)).collect();
    if rows.is_empty() {
        return Ok(None);
    }
    let mut trial = Phase {
        x: start,
        multipliers: phase.multipliers.clone(),
        penalty: phase.penalty,
        history: Vec::new(),
        inner_total: 0,
        converged: false,
    };
    run_phase(problem, &mut trial, &rows, opts.center_barrier, opts.stationarity_target, opts);
    phase.inner_total += trial.inner_total;
    if !trial.converged {
        return Ok(None);
    }
    let mut centered = problem.config_from_vars(&trial.x);
    if opts.rescale_to_feasible {
        centered = rescale(problem, &centered);
    }
    if centered.area() < config.area() - CENTER_AREA_SLACK {
        log::debug!("centering lost {:.3e} area; kept the first solution", config.area() - centered.area());
        return Ok(None);
    }
    phase.history.append(&mut trial.history);
    phase.x = trial.x;
    Ok(Some(centered))
}

struct Phase {
    x: Vec<f64>,
    multipliers: Vec<f64>,
    penalty: f64,
    history: Vec<OuterStep>,
    inner_total: usize,
    converged: bool,
}

/// Outer augmented Lagrangian loop from `phase.x`, with a log barrier of
/// initial weight `mu` on `barrier_rows` that decays to zero. On return
/// `phase.x` is the final iterate if converged, else the best one seen.
fn run_phase(
    problem: &NlpProblem,
    phase: &mut Phase,
    barrier_rows: &[(usize, f64)],
    mut mu: f64,
    inner_tol_init: f64,
    opts: &SolverOptions,
) {
    let (lower, upper) = (problem.lower(), problem.upper());
    let m = problem.num_constraints();
    let mut g = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mut inner_tol = inner_tol_init.max(opts.stationarity_target);
    let mut x = std::mem::take(&mut phase.x);
    problem.constraint_values(&x, &mut g);
    let mut previous_violation = max_positive(&g);
    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    let mut last_violation = f64::INFINITY;

    for _ in 0..opts.outer_max {
        let inner_opts = InnerOptions {
            tol: inner_tol,
            max_iter: opts.inner_max,
            memory: opts.lbfgs_memory,
            ..InnerOptions::default()
        };
        let penalty = phase.penalty;
        let result = {
            let lambda = &phase.multipliers;
            let (g, w) = (&mut g, &mut weights);
            inner_minimize(
                |xv, grad| al_eval(problem, xv, lambda, penalty, barrier_rows, mu, grad, g, w),
                lower,
                upper,
                &x,
                &inner_opts,
            )
        };
        phase.inner_total += result.iterations;
        let inner_converged = result.converged();
        x = result.x;
        problem.constraint_values(&x, &mut g);
        let violation = max_positive(&g);
        let area = problem.objective(&x);
        phase.history.push(OuterStep {
            area,
            violation,
            penalty,
            inner_tol,
            projected_gradient: result.projected_gradient_norm,
            inner_iterations: result.iterations,
        });
        log::debug!(
            "outer {}: area {:.12} violation {:.3e} penalty {:.1e} pg {:.2e} inner {}",
            phase.history.len(),
            area,
            violation,
            penalty,
            result.projected_gradient_norm,
            result.iterations
        );

        // Among iterates that are feasible to the target the larger area
        // wins; otherwise the smaller violation does.
        let better = match &best {
            None => true,
            Some((v, a, _)) => {
                let ok = violation <= opts.violation_target;
                let best_ok = *v <= opts.violation_target;
                match (ok, best_ok) {
                    (true, true) => area > *a,
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => violation < *v || (violation == *v && area > *a),
                }
            }
        };
        if better {
            best = Some((violation, area, x.clone()));
        }

        let stationary = result.projected_gradient_norm <= opts.stationarity_target;
        if mu == 0.0 && violation <= opts.violation_target && stationary {
            phase.converged = true;
            last_violation = violation;
            break;
        }
        update_multipliers(&mut phase.multipliers, &g, penalty);
        if inner_converged {
            phase.penalty = next_penalty(penalty, opts.penalty_growth, violation, previous_violation);
        }
        previous_violation = violation;
        inner_tol = (inner_tol * 0.1).max(opts.stationarity_target);
        mu *= opts.gap_barrier_decay;
        if mu < BARRIER_CUTOFF {
            mu = 0.0;
        }
    }

    // The final rescale gives up area in proportion to the leftover
    // violation, so a converged run gets a few extra multiplier steps.
    if phase.converged {
        for _ in 0..opts.polish_outer {
            if last_violation <= POLISH_VIOLATION {
                break;
            }
            update_multipliers(&mut phase.multipliers, &g, phase.penalty);
            let inner_opts = InnerOptions {
                tol: opts.stationarity_target,
                max_iter: opts.inner_max,
                memory: opts.lbfgs_memory,
                ..InnerOptions::default()
            };
            let penalty = phase.penalty;
            let result = {
                let lambda = &phase.multipliers;
                let (g, w) = (&mut g, &mut weights);
                inner_minimize(
                    |xv, grad| al_eval(problem, xv, lambda, penalty, &[], 0.0, grad, g, w),
                    lower,
                    upper,
                    &x,
                    &inner_opts,
                )
            };
            phase.inner_total += result.iterations;
            problem.constraint_values(&result.x, &mut g);
            let violation = max_positive(&g);
            if !result.converged() || violation >= last_violation {
                break;
            }
            x = result.x;
            last_violation = violation;
        }
        phase.x = x;
    } else {
        phase.x = best.map(|(_, _, bx)| bx).unwrap_or(x);
    }
}
