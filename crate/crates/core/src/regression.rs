//! Asymptotic area model `A(n) ≈ π/4 + c1/n + c2/n² + c3/n³`, fitted by
//! least squares with the intercept pinned at `π/4`.

use std::f64::consts::FRAC_PI_4;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{LspError, Result};
use crate::experiments::SweepRecord;
use crate::model::Parity;

/// Published even-n coefficients `(c1, c2, c3)`.
pub const PUBLISHED_EVEN: [f64; 3] = [-0.023182, -2.630729, -7.360373];
/// Published odd-n coefficients `(c1, c2, c3)`.
pub const PUBLISHED_ODD: [f64; 3] = [-0.024249, -3.054853, -0.131257];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub parity: Parity,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub r_squared: f64,
    pub p_values: [f64; 3],
    pub residual_max: f64,
}

impl RegressionFit {
    /// A fit carrying only coefficients, e.g. the published ones.
    pub fn from_coefficients(parity: Parity, c: [f64; 3]) -> Self {
        Self {
            parity,
            c1: c[0],
            c2: c[1],
            c3: c[2],
            n_min: 0,
            n_max: 0,
            r_squared: f64::NAN,
            p_values: [f64::NAN; 3],
            residual_max: f64::NAN,
        }
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Fits the records of `parity`; records of the other parity are an error.
pub fn fit(records: &[SweepRecord], parity: Parity) -> Result<RegressionFit> {
    let points: Vec<(usize, f64)> = records.iter().map(|r| (r.n, r.objective)).collect();
    fit_points(&points, parity)
}

/// [`fit`] on bare `(n, A(n))` pairs.
pub fn fit_points(points: &[(usize, f64)], parity: Parity) -> Result<RegressionFit> {
    if let Some(&(n, _)) = points.iter().find(|(n, _)| Parity::of(*n) != parity) {
        return Err(LspError::Parity(format!("n = {n} in a {parity} fit")));
    }
    let mut ns: Vec<usize> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 {
        return Err(LspError::Invalid(format!(
            "fit needs at least 3 distinct n, got {}",
            ns.len()
        )));
    }
    if points.len() < 4 {
        return Err(LspError::Invalid(format!(
            "fit needs at least 4 records, got {}",
            points.len()
        )));
    }

    let rows = points.len();
    let x = DMatrix::from_fn(rows, 3, |i, j| (points[i].0 as f64).powi(-(j as i32 + 1)));
    let y = DVector::from_iterator(rows, points.iter().map(|&(_, a)| a - FRAC_PI_4));
    let qr = x.clone().qr();
    let r = qr.r();
    let qty = qr.q().transpose() * &y;
    let c = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| LspError::Invalid("rank-deficient design".into()))?;

    let residuals = &y - &x * &c;
    let ssr = residuals.norm_squared();
    let mean = y.mean();
    let sst: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let r_squared = if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 };

    // Var(c) = σ² (XᵀX)⁻¹ = σ² R⁻¹ R⁻ᵀ
    let dof = (rows - 3) as f64;
    let sigma2 = ssr / dof;
    let r_inv = r
        .clone()
        .try_inverse()
        .ok_or_else(|| LspError::Invalid("rank-deficient design".into()))?;
    let cov = &r_inv * r_inv.transpose();
    let t_dist = StudentsT::new(0.0, 1.0, dof).map_err(|e| LspError::Invalid(e.to_string()))?;
    let mut p_values = [0.0; 3];
    for (j, p) in p_values.iter_mut().enumerate() {
        let se = (sigma2 * cov[(j, j)]).sqrt();
        let t = c[j] / se;
        *p = if t.is_finite() { 2.0 * t_dist.sf(t.abs()) } else if c[j] != 0.0 { 0.0 } else { 1.0 };
    }

    Ok(RegressionFit {
        parity,
        c1: c[0],
        c2: c[1],
        c3: c[2],
        n_min: ns[0],
        n_max: ns[ns.len() - 1],
        r_squared,
        p_values,
        residual_max: residuals.amax(),
    })
}

/// `π/4 + c1/n + c2/n² + c3/n³`, adding the smallest terms first.
pub fn predict(fit: &RegressionFit, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(LspError::TooFewVertices(n));
    }
    if Parity::of(n) != fit.parity {
        return Err(LspError::Parity(format!("{} fit asked for n = {n}", fit.parity)));
    }
    let k = n as f64;
    Ok(fit.c3 / (k * k * k) + fit.c2 / (k * k) + fit.c1 / k + FRAC_PI_4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Goodness {
    pub r_squared: f64,
    pub residual_max: f64,
    /// `(n, measured - predicted)` per record.
    pub residuals: Vec<(usize, f64)>,
}

/// Residual diagnostics of `fit` on `points`.
pub fn goodness(fit: &RegressionFit, points: &[(usize, f64)]) -> Result<Goodness> {
    let residuals = points
        .iter()
        .map(|&(n, a)| Ok((n, a - predict(fit, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let mean = points.iter().map(|p| p.1).sum::<f64>() / points.len().max(1) as f64;
    let sst: f64 = points.iter().map(|p| (p.1 - mean).powi(2)).sum();
    let ssr: f64 = residuals.iter().map(|r| r.1 * r.1).sum();
    Ok(Goodness {
        r_squared: if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 },
        residual_max: residuals.iter().map(|r| r.1.abs()).fold(0.0, f64::max),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn synth(c: [f64; 3], ns: impl Iterator<Item = usize>) -> Vec<(usize, f64)> {
        ns.map(|n| {
            let k = n as f64;
            (n, FRAC_PI_4 + c[0] / k + c[1] / (k * k) + c[2] / (k * k * k))
        })
        .collect()
    }

    #[test]
    fn round_trip_published_even() {
        let pts = synth(PUBLISHED_EVEN, (2..=50).map(|k| 2 * k));
        let f = fit_points(&pts, Parity::Even).unwrap();
        for (got, want) in f.coefficients().iter().zip(PUBLISHED_EVEN) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(f.r_squared, 1.0, epsilon = 1e-12);
        assert!(f.p_values.iter().all(|&p| p < 1e-4));
        assert_eq!((f.n_min, f.n_max), (4, 100));
    }

    #[test]
    fn flat_data_gives_zero() {
        let pts: Vec<(usize, f64)> = (1..10).map(|k| (2 * k + 1, FRAC_PI_4)).collect();
        let f = fit_points(&pts, Parity::Odd).unwrap();
        for c in f.coefficients() {
            assert_abs_diff_eq!(c, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_mixed_parity_and_rank_deficiency() {
        let pts = synth(PUBLISHED_EVEN, [4, 6, 7, 8].into_iter());
        assert!(matches!(fit_points(&pts, Parity::Even), Err(LspError::Parity(_))));
        let twice = synth(PUBLISHED_EVEN, [4, 4, 6, 6].into_iter());
        assert!(fit_points(&twice, Parity::Even).is_err());
    }

    #[test]
    fn predict_examples() {
        let even = RegressionFit::from_coefficients(Parity::Even, PUBLISHED_EVEN);
        assert_abs_diff_eq!(predict(&even, 2000).unwrap(), 0.78538591, epsilon = 1e-7);
        assert_abs_diff_eq!(predict(&even, 1 << 40).unwrap(), FRAC_PI_4, epsilon = 1e-12);
        assert!(predict(&even, 7).is_err());
    }

    #[test]
    fn goodness_on_perfect_data() {
        let pts = synth(PUBLISHED_ODD, (2..30).map(|k| 2 * k + 1));
        let f = fit_points(&pts, Parity::Odd).unwrap();
        let g = goodness(&f, &pts).unwrap();
        assert_abs_diff_eq!(g.r_squared, 1.0, epsilon = 1e-12);
        assert!(g.residual_max < 1e-12);
        assert_eq!(g.residuals.len(), pts.len());
    }
}
