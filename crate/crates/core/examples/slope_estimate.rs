//! Log-log slope of the gap to π/4 for each parity.

use lsp_lab::experiments::{estimate_slope, run_sweep, StartKind};
use lsp_lab::{Parity, SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    let opts = SolverOptions::default();
    for (parity, ns) in [
        (Parity::Even, (4..=40).step_by(4).collect::<Vec<_>>()),
        (Parity::Odd, (5..=41).step_by(4).collect()),
    ] {
        let records = run_sweep(&ns, Variant::Tightened, StartKind::PaperInit, &opts, None)?;
        let s = estimate_slope(&records, parity)?;
        println!(
            "{parity}: slope {:.5} over {}..{} (intercept {:.4}, rmse {:.2e})",
            s.slope, s.n_min, s.n_max, s.intercept, s.rmse
        );
    }
    Ok(())
}
