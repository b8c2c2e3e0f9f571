//! Independent reference values: closed forms, finite differences and a
//! brute-force grid search for tiny polygons.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LspError, Result};
use crate::model::NlpProblem;

/// Central-difference step used by the derivative checks.
pub const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    Analytic,
    FiniteDifference,
    GridSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub method: OracleMethod,
    /// Grid or difference step; zero for closed forms.
    pub resolution: f64,
}

/// Area of the regular n-gon whose longest diagonal is 1, the optimum for
/// odd `n`.
pub fn regular_polygon_area(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(LspError::TooFewVertices(n));
    }
    if n.is_multiple_of(2) {
        return Err(LspError::Parity(format!("regular polygon oracle needs odd n, got {n}")));
    }
    let k = n as f64;
    let half = (PI / (2.0 * k)).cos();
    Ok(k * (2.0 * PI / k).sin() / (8.0 * half * half))
}

/// Area of the default starting configuration: `n - 2` triangles with unit
/// legs and apex angle `π/n`.
pub fn initial_point_area(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(LspError::TooFewVertices(n));
    }
    Ok(0.5 * (n - 2) as f64 * (PI / n as f64).sin())
}

/// Largest componentwise relative error between `analytic` and central
/// differences of `f` at `point`. The denominator is `max(1, |analytic_i|)`.
pub fn fd_check<F>(mut f: F, analytic: &[f64], point: &[f64], step: f64) -> Result<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    if !(step > 0.0) {
        return Err(LspError::Invalid(format!("finite-difference step must be positive, got {step}")));
    }
    if analytic.len() != point.len() {
        return Err(LspError::Dimension(format!(
            "{} gradient entries for {} coordinates",
            analytic.len(),
            point.len()
        )));
    }
    let mut x = point.to_vec();
    let mut worst = 0.0f64;
    for i in 0..x.len() {
        let orig = x[i];
        x[i] = orig + step;
        let up = f(&x);
        x[i] = orig - step;
        let down = f(&x);
        x[i] = orig;
        let numeric = (up - down) / (2.0 * step);
        worst = worst.max((numeric - analytic[i]).abs() / analytic[i].abs().max(1.0));
    }
    Ok(worst)
}

/// Finite-difference errors for the objective gradient and every row of the
/// constraint Jacobian of `problem` at `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCheck {
    pub gradient: f64,
    pub jacobian: f64,
}

pub fn check_problem_derivatives(problem: &NlpProblem, x: &[f64], step: f64) -> Result<DerivativeCheck> {
    if x.len() != problem.num_vars() {
        return Err(LspError::Dimension(format!(
            "{} coordinates for {} variables",
            x.len(),
            problem.num_vars()
        )));
    }
    let mut grad = vec![0.0; x.len()];
    problem.gradient(x, &mut grad);
    let gradient = fd_check(|v| problem.objective(v), &grad, x, step)?;

    let m = problem.num_constraints();
    let (rows, cols) = problem.jacobian_structure();
    let mut values = vec![0.0; rows.len()];
    problem.jacobian_values(x, &mut values);
    let mut dense = vec![vec![0.0; x.len()]; m];
    for ((&r, &c), &v) in rows.iter().zip(cols).zip(&values) {
        dense[r][c] += v;
    }
    let mut g = vec![0.0; m];
    let mut jacobian = 0.0f64;
    for (k, row) in dense.iter().enumerate() {
        let err = fd_check(
            |v| {
                problem.constraint_values(v, &mut g);
                g[k]
            },
            row,
            x,
            step,
        )?;
        jacobian = jacobian.max(err);
    }
    Ok(DerivativeCheck { gradient, jacobian })
}

#[derive(Clone, Copy)]
struct Vertex {
    x: f64,
    y: f64,
    r: f64,
    theta: f64,
}

impl Vertex {
    fn new(r: f64, ray: &Ray) -> Self {
        Self { x: r * ray.cos, y: r * ray.sin, r, theta: ray.theta }
    }

    fn dist_sq(&self, other: &Vertex) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }
}

/// Slack on the unit-distance test so grid points exactly at distance one
/// survive rounding.
const GRID_SLACK: f64 = 1e-12;

#[derive(Clone, Copy)]
struct Ray {
    theta: f64,
    cos: f64,
    sin: f64,
}

struct Grid {
    n: usize,
    step: f64,
    rays: Vec<Ray>,
    radii: Vec<f64>,
}

/// Upper bound on the area still to come after `last` when `m` triangles
/// remain: each is at most `sin(Δ)/2` and `Σ sin Δ_i ≤ m sin(S/m)` on `[0, π]`.
fn remaining_bound(last: &Vertex, m: usize) -> f64 {
    let span = PI - last.theta;
    if m == 1 {
        return 0.5 * last.r * span.min(PI / 2.0).sin();
    }
    0.5 * m as f64 * (span / m as f64).min(PI / 2.0).sin()
}

impl Grid {
    fn new(n: usize, step: f64) -> Self {
        let rays = (1..)
            .map(|k| k as f64 * step)
            .take_while(|&t| t < PI)
            .map(|theta| Ray { theta, cos: theta.cos(), sin: theta.sin() })
            .collect();
        let radii = (0..).map(|k| k as f64 * step).take_while(|&r| r <= 1.0 + GRID_SLACK).collect();
        Self { n, step, rays, radii }
    }

    /// Best area over completions of `placed`, or `best` if none beats it.
    /// The final free vertex takes the largest feasible grid radius: each
    /// distance row is convex in that radius and holds at zero, so the
    /// feasible radii form an interval starting at zero, and the area grows
    /// with the radius.
    fn search(&self, placed: &mut Vec<Vertex>, partial_area: f64, mut best: f64) -> f64 {
        let last = placed.last().copied().expect("search starts from a placed vertex");
        let remaining = self.n - 1 - placed.len();
        if partial_area + remaining_bound(&last, remaining) <= best {
            return best;
        }
        let next_first = self.rays.partition_point(|ray| ray.theta <= last.theta + GRID_SLACK);
        if remaining == 1 {
            for ray in &self.rays[next_first..] {
                // ½ r_last r sin(θ - θ_last) as a cross product
                let reach = 0.5 * (last.x * ray.sin - last.y * ray.cos);
                if partial_area + reach <= best {
                    continue;
                }
                let Some(r) = self.max_radius(placed, ray) else { continue };
                best = best.max(partial_area + reach * r);
            }
            return best;
        }
        for ray in &self.rays[next_first..] {
            let Some(top) = self.max_radius(placed, ray) else { continue };
            let top = (top / self.step).round() as usize;
            // The bound only grows with the new radius, so walk downwards
            // from the largest feasible one and stop at the first failure.
            for &r in self.radii[..=top].iter().rev() {
                let v = Vertex::new(r, ray);
                let area = partial_area + 0.5 * (last.x * v.y - last.y * v.x);
                if area + remaining_bound(&v, remaining - 1) <= best {
                    break;
                }
                placed.push(v);
                best = self.search(placed, area, best);
                placed.pop();
            }
        }
        best
    }

    fn max_radius(&self, placed: &[Vertex], ray: &Ray) -> Option<f64> {
        let mut hi = 1.0f64;
        for p in placed {
            // r² - 2 r p.r cos(Δ) + p.r² - 1 ≤ 0
            let b = p.x * ray.cos + p.y * ray.sin;
            let disc = b * b - p.r * p.r + 1.0;
            if disc < 0.0 {
                return None;
            }
            hi = hi.min(b + disc.sqrt());
        }
        let r = (((hi + GRID_SLACK) / self.step).floor() * self.step).min(1.0);
        if r < 0.0 {
            return None;
        }
        let v = Vertex::new(r, ray);
        placed.iter().all(|p| p.dist_sq(&v) <= 1.0 + GRID_SLACK).then_some(r)
    }

    fn best_area(&self, incumbent: f64) -> f64 {
        let firsts: Vec<Vertex> = self
            .rays
            .iter()
            .flat_map(|ray| self.radii.iter().map(move |&r| Vertex::new(r, ray)))
            .collect();
        firsts
            .par_iter()
            .map(|&first| {
                let mut placed = Vec::with_capacity(self.n - 1);
                placed.push(first);
                self.search(&mut placed, 0.0, incumbent)
            })
            .reduce(|| incumbent, f64::max)
    }
}

/// Grid optimum with an incumbent taken from the grid of twice the step,
/// whose points all lie on this grid.
fn grid_optimum(n: usize, step: f64) -> f64 {
    let incumbent = if step < 0.1 { grid_optimum(n, 2.0 * step) } else { 0.0 };
    Grid::new(n, step).best_area(incumbent)
}

/// Exhaustive search over configurations whose free angles are increasing
/// multiples of `step` in `(0, π)` and whose radii are multiples of `step`
/// in `[0, 1]`. Returns the best feasible area, a lower bound on the
/// optimum.
pub fn grid_search_small(n: usize, step: f64) -> Result<OracleResult> {
    if n < 3 {
        return Err(LspError::TooFewVertices(n));
    }
    if n > 5 {
        return Err(LspError::Invalid(format!("grid search is limited to n <= 5, got {n}")));
    }
    if !(0.01..=0.1).contains(&step) {
        return Err(LspError::Invalid(format!("grid step must lie in [0.01, 0.1], got {step}")));
    }
    Ok(OracleResult { value: grid_optimum(n, step), method: OracleMethod::GridSearch, resolution: step })
}
