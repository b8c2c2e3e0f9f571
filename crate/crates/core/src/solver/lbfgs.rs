//! Projected limited-memory BFGS for box-constrained minimization.
//!
//! Each iteration identifies the variables held at a bound (gradient pushing
//! outward, or fixed by equal bounds), builds a two-loop L-BFGS direction on
//! the remaining ones and backtracks along the projected path
//! `P(x + αd)` until the Armijo condition holds.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy)]
pub struct InnerOptions {
    /// Target for the infinity norm of the projected gradient.
    pub tol: f64,
    pub max_iter: usize,
    pub memory: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    pub max_backtracks: usize,
}

impl Default for InnerOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 3000, memory: 10, armijo: 1e-4, max_backtracks: 60 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerStatus {
    Converged,
    MaxIterations,
    /// No acceptable step along either the quasi-Newton or the projected
    /// steepest-descent direction.
    LineSearchFailed,
    /// The objective was not finite at the starting point.
    NonFinite,
}

#[derive(Debug, Clone)]
pub struct InnerResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub projected_gradient_norm: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub status: InnerStatus,
}

impl InnerResult {
    pub fn converged(&self) -> bool {
        self.status == InnerStatus::Converged
    }
}

fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
}

/// `‖P(x - g) - x‖∞`, zero exactly at a first-order stationary point.
pub fn projected_gradient_norm(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> f64 {
    x.iter()
        .zip(g)
        .zip(lower.iter().zip(upper))
        .map(|((&xi, &gi), (&lo, &hi))| ((xi - gi).clamp(lo, hi) - xi).abs())
        .fold(0.0, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Pair {
    s: Vec<f64>,
    y: Vec<f64>,
    rho: f64,
}

/// Two-loop recursion on the free subspace; returns `-H q`.
fn lbfgs_direction(grad: &[f64], free: &[bool], memory: &VecDeque<Pair>) -> Vec<f64> {
    let mut q: Vec<f64> = grad.iter().zip(free).map(|(&g, &f)| if f { g } else { 0.0 }).collect();
    let mut alphas = Vec::with_capacity(memory.len());
    for pair in memory.iter().rev() {
        let a = pair.rho * dot(&pair.s, &q);
        q.iter_mut().zip(&pair.y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some(last) = memory.back() {
        let gamma = dot(&last.s, &last.y) / dot(&last.y, &last.y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for (pair, a) in memory.iter().zip(alphas.into_iter().rev()) {
        let b = pair.rho * dot(&pair.y, &q);
        q.iter_mut().zip(&pair.s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter().zip(free).map(|(&v, &f)| if f { -v } else { 0.0 }).collect()
}

/// Minimizes `f` over the box `[lower, upper]` starting from `start`.
///
/// `f` writes the gradient into its second argument and returns the value.
/// All iterates stay inside the box. Non-finite trial values are treated as
/// failed Armijo tests, so the search backs off from them; the returned
/// point is always the best finite iterate seen.
pub fn inner_minimize<F>(
    mut f: F,
    lower: &[f64],
    upper: &[f64],
    start: &[f64],
    opts: &InnerOptions,
) -> InnerResult
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let dim = start.len();
    let mut x = start.to_vec();
    project(&mut x, lower, upper);
    let mut g = vec![0.0; dim];
    let mut fx = f(&x, &mut g);
    let mut evaluations = 1;
    if !fx.is_finite() {
        return InnerResult {
            x,
            value: fx,
            projected_gradient_norm: f64::INFINITY,
            iterations: 0,
            evaluations,
            status: InnerStatus::NonFinite,
        };
    }

    let mut memory: VecDeque<Pair> = VecDeque::with_capacity(opts.memory);
    let mut trial = vec![0.0; dim];
    let mut g_trial = vec![0.0; dim];
    let mut free = vec![true; dim];
    let mut pg = projected_gradient_norm(&x, &g, lower, upper);
    let mut status = InnerStatus::MaxIterations;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        if pg <= opts.tol {
            status = InnerStatus::Converged;
            break;
        }
        iterations += 1;

        let eps = pg.min(1e-6);
        for i in 0..dim {
            free[i] = lower[i] < upper[i]
                && !(x[i] - lower[i] <= eps && g[i] > 0.0)
                && !(upper[i] - x[i] <= eps && g[i] < 0.0);
        }

        let mut accepted = false;
        let mut f_new = fx;
        // First attempt uses the quasi-Newton direction; on failure the
        // memory is dropped and the projected gradient path is searched.
        for attempt in 0..2 {
            let quasi_newton = attempt == 0 && !memory.is_empty();
            let mut d = if quasi_newton { lbfgs_direction(&g, &free, &memory) } else { Vec::new() };
            if !quasi_newton || !(dot(&g, &d) < 0.0) {
                memory.clear();
                d = x
                    .iter()
                    .zip(&g)
                    .zip(lower.iter().zip(upper))
                    .map(|((&xi, &gi), (&lo, &hi))| (xi - gi).clamp(lo, hi) - xi)
                    .collect();
            }
            let dmax = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mut alpha = if memory.is_empty() { (1.0f64).min(1.0 / dmax) } else { 1.0 };
            let slack = 8.0 * f64::EPSILON * fx.abs();
            for _ in 0..opts.max_backtracks {
                for i in 0..dim {
                    trial[i] = (x[i] + alpha * d[i]).clamp(lower[i], upper[i]);
                }
                let ft = f(&trial, &mut g_trial);
                evaluations += 1;
                let decrease: f64 = g.iter().zip(trial.iter().zip(&x)).map(|(gi, (t, xi))| gi * (t - xi)).sum();
                if ft.is_finite() && ft <= fx + opts.armijo * decrease + slack {
                    accepted = true;
                    f_new = ft;
                    break;
                }
                alpha *= 0.5;
            }
            if accepted {
                break;
            }
            if memory.is_empty() {
                break;
            }
        }
        if !accepted {
            status = InnerStatus::LineSearchFailed;
            break;
        }

        let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_trial.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let yy = dot(&y, &y);
        if sy > f64::EPSILON * yy && sy > 0.0 {
            if memory.len() == opts.memory {
                memory.pop_front();
            }
            memory.push_back(Pair { s, y, rho: 1.0 / sy });
        }
        std::mem::swap(&mut x, &mut trial);
        std::mem::swap(&mut g, &mut g_trial);
        fx = f_new;
        pg = projected_gradient_norm(&x, &g, lower, upper);
    }
    if status == InnerStatus::MaxIterations && pg <= opts.tol {
        status = InnerStatus::Converged;
    }

    InnerResult { x, value: fx, projected_gradient_norm: pg, iterations, evaluations, status }
}
