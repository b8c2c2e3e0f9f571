//! Polar-coordinate models of the largest small polygon.
//!
//! Vertex `k` (0-based) sits at radius `r[k]` and angle `theta[k]` measured
//! from the last vertex, which is pinned at the origin with `r = 0` and
//! `theta = π`. The remaining `2(n-1)` coordinates are the free coordinates;
//! an [`NlpProblem`] maps its decision vector onto them (identity for the
//! plain models, a mirror map when the symmetry reduction is enabled).
//!
//! All constraints use the form `g(x) <= 0`:
//!
//! * distance rows: `r_i² + r_j² - 2 r_i r_j cos(θ_i - θ_j) - 1` for every pair
//!   of free vertices `i < j`,
//! * angle-gap rows: `min_gap - θ_{i+1} + θ_i` for consecutive free vertices.
//!
//! Angle equalities of the tightened model are realized as fixed variables
//! (equal lower and upper bounds), never as constraint rows.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LspError, Result};

/// Feasibility tolerance used when labelling a configuration feasible.
pub const FEASIBILITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Tightened,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Standard => f.write_str("standard"),
            Variant::Tightened => f.write_str("tightened"),
        }
    }
}

impl FromStr for Variant {
    type Err = LspError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(Variant::Standard),
            "tightened" => Ok(Variant::Tightened),
            other => Err(LspError::Invalid(format!("unknown model variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

impl FromStr for Parity {
    type Err = LspError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(LspError::Invalid(format!("unknown parity '{other}'"))),
        }
    }
}

/// Which model to build for a given vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    n: usize,
    variant: Variant,
    symmetry: bool,
}

impl ModelSpec {
    pub fn new(n: usize, variant: Variant) -> Result<Self> {
        if n < 3 {
            return Err(LspError::TooFewVertices(n));
        }
        Ok(Self { n, variant, symmetry: false })
    }

    /// Enables the mirror reduction about the vertical axis. Even `n` only.
    pub fn with_symmetry(mut self, symmetry: bool) -> Result<Self> {
        if symmetry && self.n % 2 == 1 {
            return Err(LspError::SymmetryRequiresEven(self.n));
        }
        self.symmetry = symmetry;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn symmetry(&self) -> bool {
        self.symmetry
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }
}

/// Variable and constraint counts of the unreduced model for `n` vertices.
pub fn model_counts(n: usize) -> (usize, usize) {
    (2 * (n - 1), (n - 1) * (n - 2) / 2 + (n - 2))
}

/// Polar coordinates of all `n` vertices, including the fixed one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonConfig {
    r: Vec<f64>,
    theta: Vec<f64>,
}

impl PolygonConfig {
    /// Builds a configuration from all `n` radii and angles. The last vertex
    /// must be the fixed one (`r = 0`, `theta = π`).
    pub fn new(r: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        if r.len() != theta.len() {
            return Err(LspError::Dimension(format!(
                "{} radii but {} angles",
                r.len(),
                theta.len()
            )));
        }
        if r.len() < 3 {
            return Err(LspError::TooFewVertices(r.len()));
        }
        let last = r.len() - 1;
        if r[last] != 0.0 || theta[last] != PI {
            return Err(LspError::Invalid(
                "last vertex must be fixed at r = 0, theta = π".into(),
            ));
        }
        Ok(Self { r, theta })
    }

    /// Builds a configuration from the `n - 1` free vertices, appending the
    /// fixed vertex.
    pub fn from_free(mut r: Vec<f64>, mut theta: Vec<f64>) -> Result<Self> {
        r.push(0.0);
        theta.push(PI);
        Self::new(r, theta)
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Polygon area by the polar shoelace formula around the origin vertex.
    pub fn area(&self) -> f64 {
        area_of(&self.r, &self.theta)
    }

    /// Partial derivatives of [`area`](Self::area) with respect to the free
    /// coordinates, laid out as `[r_0 .. r_{n-2}, θ_0 .. θ_{n-2}]`.
    pub fn area_gradient(&self) -> Vec<f64> {
        let mut grad = vec![0.0; 2 * (self.n() - 1)];
        area_gradient_into(&self.r, &self.theta, &mut grad);
        grad
    }

    /// Squared distance between vertices `i < j` (0-based, `j` may be the
    /// fixed vertex).
    pub fn pair_distance_sq(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.n();
        if i >= j || j >= n {
            return Err(LspError::PairOutOfRange { i, j, n });
        }
        Ok(distance_sq(self.r[i], self.theta[i], self.r[j], self.theta[j]))
    }

    /// Cartesian vertex positions with the fixed vertex at the origin and the
    /// mirror axis vertical.
    pub fn cartesian(&self) -> Vec<[f64; 2]> {
        self.r
            .iter()
            .zip(&self.theta)
            .map(|(&r, &t)| [r * t.cos(), r * t.sin()])
            .collect()
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let n = self.n();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(distance_sq(self.r[i], self.theta[i], self.r[j], self.theta[j]));
            }
        }
        best.sqrt()
    }

    /// Ordered angles, coordinates in range and every pair within unit
    /// distance, all up to `tol`.
    pub fn is_feasible(&self, tol: f64) -> bool {
        let n = self.n();
        let in_box = self.r[..n - 1].iter().all(|&r| (-tol..=1.0 + tol).contains(&r))
            && self.theta[..n - 1].iter().all(|&t| (-tol..=PI + tol).contains(&t));
        let ordered = self.theta[..n - 1].windows(2).all(|w| w[1] - w[0] >= -tol);
        in_box && ordered && self.diameter().powi(2) <= 1.0 + tol
    }

    /// Reflection about the vertical axis: vertex `k` takes the place of
    /// vertex `n - 2 - k` with its angle mirrored.
    pub fn mirrored(&self) -> Self {
        let n = self.n();
        let mut r = Vec::with_capacity(n);
        let mut theta = Vec::with_capacity(n);
        for k in 0..n - 1 {
            r.push(self.r[n - 2 - k]);
            theta.push(PI - self.theta[n - 2 - k]);
        }
        r.push(0.0);
        theta.push(PI);
        Self { r, theta }
    }

    /// Scales all radii. Scaling about the origin vertex scales every
    /// pairwise distance by the same factor and leaves angles unchanged.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            r: self.r.iter().map(|r| r * factor).collect(),
            theta: self.theta.clone(),
        }
    }
}

fn distance_sq(ri: f64, ti: f64, rj: f64, tj: f64) -> f64 {
    ri * ri + rj * rj - 2.0 * ri * rj * (ti - tj).cos()
}

fn area_of(r: &[f64], theta: &[f64]) -> f64 {
    0.5 * r
        .windows(2)
        .zip(theta.windows(2))
        .map(|(rw, tw)| rw[0] * rw[1] * (tw[1] - tw[0]).sin())
        .sum::<f64>()
}

/// Writes the area gradient w.r.t. the free coordinates into `grad`
/// (length `2(n-1)`).
fn area_gradient_into(r: &[f64], theta: &[f64], grad: &mut [f64]) {
    let n = r.len();
    let free = n - 1;
    grad.iter_mut().for_each(|g| *g = 0.0);
    for k in 0..n - 1 {
        let (s, c) = (theta[k + 1] - theta[k]).sin_cos();
        let (a, b) = (r[k], r[k + 1]);
        // term 0.5 * a * b * sin(θ_{k+1} - θ_k)
        grad[k] += 0.5 * b * s;
        grad[free + k] -= 0.5 * a * b * c;
        if k + 1 < free {
            grad[k + 1] += 0.5 * a * s;
            grad[free + k + 1] += 0.5 * a * b * c;
        }
    }
}

/// One row of the constraint system, in terms of 0-based vertex indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    /// Squared distance between free vertices `i < j` at most one.
    Distance { i: usize, j: usize },
    /// `θ_{i+1} - θ_i >= min_gap`.
    AngleGap { i: usize, min_gap: f64 },
}

/// Free coordinate `f` equals `offset + scale * x[var]`.
#[derive(Debug, Clone, Copy)]
struct CoordMap {
    var: usize,
    scale: f64,
    offset: f64,
}

#[derive(Debug, Clone)]
struct RowPattern {
    start: usize,
    len: usize,
    /// Jacobian slot (relative to `start`) for each full-coordinate partial.
    slots: [usize; 4],
}

/// Trigonometric cache for one evaluation point.
struct Point {
    r: Vec<f64>,
    theta: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl Point {
    fn new(r: Vec<f64>, theta: Vec<f64>) -> Self {
        let (sin, cos) = theta.iter().map(|t| t.sin_cos()).unzip();
        Self { r, theta, cos, sin }
    }

    fn from_config(config: &PolygonConfig) -> Self {
        Self::new(config.r.clone(), config.theta.clone())
    }

    fn distance_row(&self, i: usize, j: usize) -> (f64, [f64; 4]) {
        let (ri, rj) = (self.r[i], self.r[j]);
        let c = self.cos[i] * self.cos[j] + self.sin[i] * self.sin[j];
        let s = self.sin[i] * self.cos[j] - self.cos[i] * self.sin[j];
        let value = ri * ri + rj * rj - 2.0 * ri * rj * c - 1.0;
        let partials = [
            2.0 * (ri - rj * c),
            2.0 * (rj - ri * c),
            2.0 * ri * rj * s,
            -2.0 * ri * rj * s,
        ];
        (value, partials)
    }

    fn constraint(&self, row: &Constraint) -> f64 {
        match *row {
            Constraint::Distance { i, j } => self.distance_row(i, j).0,
            Constraint::AngleGap { i, min_gap } => min_gap - self.theta[i + 1] + self.theta[i],
        }
    }
}

/// A fully assembled nonlinear program for one [`ModelSpec`].
///
/// The decision vector `x` has [`num_vars`](Self::num_vars) entries; fixed
/// variables are kept in `x` with equal bounds so the reported counts match
/// the unreduced model.
#[derive(Debug, Clone)]
pub struct NlpProblem {
    spec: ModelSpec,
    coords: Vec<CoordMap>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    constraints: Vec<Constraint>,
    rows: Vec<RowPattern>,
    jac_rows: Vec<usize>,
    jac_cols: Vec<usize>,
}

/// Assembles the model described by `spec`.
pub fn build_problem(spec: &ModelSpec) -> NlpProblem {
    let n = spec.n;
    let free = n - 1;
    let step = PI / n as f64;

    // Variable layout and coordinate map.
    let (num_vars, coords) = if spec.symmetry {
        let m = n / 2;
        let mut coords = Vec::with_capacity(2 * free);
        for k in 1..=free {
            let (var, scale, offset) = if k <= m { (k - 1, 1.0, 0.0) } else { (n - k - 1, 1.0, 0.0) };
            coords.push(CoordMap { var, scale, offset });
        }
        for k in 1..=free {
            let mapped = if k <= m {
                CoordMap { var: m + k - 1, scale: 1.0, offset: 0.0 }
            } else {
                CoordMap { var: m + n - k - 1, scale: -1.0, offset: PI }
            };
            coords.push(mapped);
        }
        (2 * m, coords)
    } else {
        let coords = (0..2 * free).map(|f| CoordMap { var: f, scale: 1.0, offset: 0.0 }).collect();
        (2 * free, coords)
    };

    let mut lower = vec![0.0; num_vars];
    let mut upper = vec![0.0; num_vars];
    let r_vars = num_vars / 2;
    for v in 0..num_vars {
        upper[v] = if v < r_vars { 1.0 } else { PI };
    }
    let mut fix = |angle_index: usize, value: f64| {
        let var = coords[free + angle_index].var;
        lower[var] = value;
        upper[var] = value;
    };
    match (spec.variant, spec.parity()) {
        (Variant::Tightened, Parity::Odd) => {
            for k in 0..free {
                fix(k, (k + 1) as f64 * step);
            }
        }
        (Variant::Tightened, Parity::Even) => fix(n / 2 - 1, FRAC_PI_2),
        (Variant::Standard, _) => {}
    }
    if spec.symmetry {
        // the middle vertex maps onto itself under the mirror
        fix(n / 2 - 1, FRAC_PI_2);
    }

    let min_gap = match spec.variant {
        Variant::Standard => 0.0,
        Variant::Tightened => step,
    };
    let mut constraints = Vec::new();
    for i in 0..free {
        for j in i + 1..free {
            // mirror of pair (i, j) is (n-2-j, n-2-i)
            if spec.symmetry && (n - 2 - j, n - 2 - i) < (i, j) {
                continue;
            }
            constraints.push(Constraint::Distance { i, j });
        }
    }
    for i in 0..free - 1 {
        if spec.symmetry && n - 3 - i < i {
            continue;
        }
        constraints.push(Constraint::AngleGap { i, min_gap });
    }

    let mut rows = Vec::with_capacity(constraints.len());
    let mut jac_rows = Vec::new();
    let mut jac_cols = Vec::new();
    for (row, c) in constraints.iter().enumerate() {
        let full = full_coords_of(c, free);
        let start = jac_cols.len();
        let mut slots = [0usize; 4];
        for (slot, f) in full.iter().enumerate() {
            let Some(f) = f else { continue };
            let var = coords[*f].var;
            let pos = jac_cols[start..].iter().position(|&c| c == var);
            slots[slot] = match pos {
                Some(p) => p,
                None => {
                    jac_cols.push(var);
                    jac_rows.push(row);
                    jac_cols.len() - 1 - start
                }
            };
        }
        rows.push(RowPattern { start, len: jac_cols.len() - start, slots });
    }

    NlpProblem { spec: *spec, coords, lower, upper, constraints, rows, jac_rows, jac_cols }
}

/// Free-coordinate indices touched by a constraint row, in partial order.
fn full_coords_of(c: &Constraint, free: usize) -> [Option<usize>; 4] {
    match *c {
        Constraint::Distance { i, j } => [Some(i), Some(j), Some(free + i), Some(free + j)],
        Constraint::AngleGap { i, .. } => [Some(free + i), Some(free + i + 1), None, None],
    }
}

/// Uniform angles `θ_k = kπ/n` and unit radii, with the fixed vertex last.
pub fn initial_point(spec: &ModelSpec) -> PolygonConfig {
    let n = spec.n;
    let step = PI / n as f64;
    let mut r = vec![1.0; n];
    r[n - 1] = 0.0;
    let mut theta: Vec<f64> = (1..=n).map(|k| k as f64 * step).collect();
    theta[n - 1] = PI;
    PolygonConfig { r, theta }
}

impl NlpProblem {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn initial_point(&self) -> PolygonConfig {
        initial_point(&self.spec)
    }

    /// Expands a decision vector into a full configuration.
    pub fn config_from_vars(&self, x: &[f64]) -> PolygonConfig {
        debug_assert_eq!(x.len(), self.num_vars());
        let n = self.n();
        let free = n - 1;
        let mut r = Vec::with_capacity(n);
        let mut theta = Vec::with_capacity(n);
        for (f, map) in self.coords.iter().enumerate() {
            let value = map.offset + map.scale * x[map.var];
            if f < free {
                r.push(value);
            } else {
                theta.push(value);
            }
        }
        r.push(0.0);
        theta.push(PI);
        PolygonConfig { r, theta }
    }

    /// Reads the decision vector back from a configuration. For mirrored
    /// coordinates the first (lower-index) representative is used.
    pub fn vars_from_config(&self, config: &PolygonConfig) -> Result<Vec<f64>> {
        self.check_dims(config)?;
        let free = self.n() - 1;
        let mut x = vec![f64::NAN; self.num_vars()];
        for (f, map) in self.coords.iter().enumerate() {
            if x[map.var].is_nan() {
                let coord = if f < free { config.r[f] } else { config.theta[f - free] };
                x[map.var] = (coord - map.offset) / map.scale;
            }
        }
        Ok(x)
    }

    fn check_dims(&self, config: &PolygonConfig) -> Result<()> {
        if config.n() != self.n() {
            return Err(LspError::Dimension(format!(
                "configuration has {} vertices, problem expects {}",
                config.n(),
                self.n()
            )));
        }
        Ok(())
    }

    fn point(&self, x: &[f64]) -> Point {
        let config = self.config_from_vars(x);
        Point::new(config.r, config.theta)
    }

    /// Polygon area at `x` (the quantity being maximized).
    pub fn objective(&self, x: &[f64]) -> f64 {
        let config = self.config_from_vars(x);
        config.area()
    }

    /// Gradient of [`objective`](Self::objective) w.r.t. `x`.
    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let config = self.config_from_vars(x);
        let mut full = vec![0.0; self.coords.len()];
        area_gradient_into(&config.r, &config.theta, &mut full);
        out.iter_mut().for_each(|g| *g = 0.0);
        for (f, map) in self.coords.iter().enumerate() {
            out[map.var] += map.scale * full[f];
        }
    }

    /// Objective and gradient in one pass.
    pub fn objective_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        self.gradient(x, grad);
        self.objective(x)
    }

    /// Constraint values `g(x)` (feasible when every entry is `<= 0`).
    pub fn constraint_values(&self, x: &[f64], out: &mut [f64]) {
        let point = self.point(x);
        for (c, o) in self.constraints.iter().zip(out.iter_mut()) {
            *o = point.constraint(c);
        }
    }

    /// Row and column indices of the structural Jacobian nonzeros. The
    /// pattern does not depend on the evaluation point.
    pub fn jacobian_structure(&self) -> (&[usize], &[usize]) {
        (&self.jac_rows, &self.jac_cols)
    }

    /// Decision variables appearing in constraint row `row`.
    pub fn row_variables(&self, row: usize) -> &[usize] {
        let pattern = &self.rows[row];
        &self.jac_cols[pattern.start..pattern.start + pattern.len]
    }

    pub fn jacobian_nnz(&self) -> usize {
        self.jac_cols.len()
    }

    /// Jacobian values in the order given by
    /// [`jacobian_structure`](Self::jacobian_structure).
    pub fn jacobian_values(&self, x: &[f64], out: &mut [f64]) {
        let point = self.point(x);
        out.iter_mut().for_each(|v| *v = 0.0);
        for (c, pattern) in self.constraints.iter().zip(&self.rows) {
            let (full, partials) = self.row_partials(&point, c);
            let dst = &mut out[pattern.start..pattern.start + pattern.len];
            for slot in 0..4 {
                if let Some(f) = full[slot] {
                    dst[pattern.slots[slot]] += self.coords[f].scale * partials[slot];
                }
            }
        }
    }

    /// Adds `Jᵀ w` to `out`, skipping rows with zero weight.
    pub fn add_jacobian_transpose_product(&self, x: &[f64], weights: &[f64], out: &mut [f64]) {
        let point = self.point(x);
        self.add_jt_product_at(&point, weights, out);
    }

    fn add_jt_product_at(&self, point: &Point, weights: &[f64], out: &mut [f64]) {
        for (c, &w) in self.constraints.iter().zip(weights) {
            if w == 0.0 {
                continue;
            }
            let (full, partials) = self.row_partials(point, c);
            for slot in 0..4 {
                if let Some(f) = full[slot] {
                    let map = self.coords[f];
                    out[map.var] += w * map.scale * partials[slot];
                }
            }
        }
    }

    fn row_partials(&self, point: &Point, c: &Constraint) -> ([Option<usize>; 4], [f64; 4]) {
        let free = self.n() - 1;
        let full = full_coords_of(c, free);
        let partials = match *c {
            Constraint::Distance { i, j } => point.distance_row(i, j).1,
            Constraint::AngleGap { .. } => [1.0, -1.0, 0.0, 0.0],
        };
        (full, partials)
    }

    /// Evaluates `area`, its gradient and all constraint values sharing one
    /// trigonometric cache. Used by the solver's inner loop.
    pub(crate) fn evaluate(&self, x: &[f64], grad: &mut [f64], g: &mut [f64]) -> (f64, EvalPoint) {
        let point = self.point(x);
        let mut full = vec![0.0; self.coords.len()];
        area_gradient_into(&point.r, &point.theta, &mut full);
        grad.iter_mut().for_each(|v| *v = 0.0);
        for (f, map) in self.coords.iter().enumerate() {
            grad[map.var] += map.scale * full[f];
        }
        for (c, o) in self.constraints.iter().zip(g.iter_mut()) {
            *o = point.constraint(c);
        }
        (area_of(&point.r, &point.theta), EvalPoint(point))
    }

    pub(crate) fn add_jt_product_cached(&self, point: &EvalPoint, weights: &[f64], out: &mut [f64]) {
        self.add_jt_product_at(&point.0, weights, out);
    }

    /// Largest constraint or bound violation at `config`; zero when feasible.
    ///
    /// Constraint rows are evaluated on the configuration itself. Bounds are
    /// checked on every coordinate, and for the mirror-reduced model any
    /// deviation from the mirror relation also counts as violation.
    pub fn max_violation(&self, config: &PolygonConfig) -> Result<f64> {
        self.check_dims(config)?;
        let n = self.n();
        let free = n - 1;
        let point = Point::from_config(config);
        let mut worst = self
            .constraints
            .iter()
            .map(|c| point.constraint(c))
            .fold(0.0f64, f64::max);
        worst = worst.max(config.r[free].abs()).max((config.theta[free] - PI).abs());
        let x = self.vars_from_config(config)?;
        for (f, map) in self.coords.iter().enumerate() {
            let coord = if f < free { config.r[f] } else { config.theta[f - free] };
            let value = (coord - map.offset) / map.scale;
            let v = map.var;
            worst = worst
                .max(self.lower[v] - value)
                .max(value - self.upper[v])
                .max((value - x[v]).abs());
        }
        Ok(worst)
    }
}

/// Opaque evaluation cache returned by [`NlpProblem::evaluate`].
pub(crate) struct EvalPoint(Point);
