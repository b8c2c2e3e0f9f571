//! Fit the asymptotic area model to an even sweep and compare with the
//! published coefficients.

use lsp_lab::experiments::{run_sweep, StartKind};
use lsp_lab::regression::{fit, predict, RegressionFit, PUBLISHED_EVEN};
use lsp_lab::{Parity, SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    let ns: Vec<usize> = (4..=60).step_by(2).collect();
    let records = run_sweep(&ns, Variant::Tightened, StartKind::PaperInit, &SolverOptions::default(), None)?;
    let ours = fit(&records, Parity::Even)?;
    let published = RegressionFit::from_coefficients(Parity::Even, PUBLISHED_EVEN);

    println!("own fit    c = {:?}", ours.coefficients());
    println!("published  c = {:?}", published.coefficients());
    println!("R² {:.8}  max residual {:.2e}  p = {:?}", ours.r_squared, ours.residual_max, ours.p_values);
    for n in [100, 200, 1000] {
        println!("A({n}) ≈ {:.10} (own) {:.10} (published)", predict(&ours, n)?, predict(&published, n)?);
    }
    Ok(())
}
