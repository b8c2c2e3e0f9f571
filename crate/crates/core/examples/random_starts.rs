//! Spread of standard-model results over seeded random starts.

use lsp_lab::experiments::random_start_study;
use lsp_lab::io::fixed10;
use lsp_lab::SolverOptions;

fn main() -> lsp_lab::Result<()> {
    for n in [6, 8, 10] {
        let study = random_start_study(n, n, 0, &SolverOptions::default(), None)?;
        let converged = study.records.iter().filter(|r| r.converged).count();
        println!(
            "n = {n:>2}: best {} worst {} spread {:.2e} ({converged}/{} converged)",
            fixed10(study.best),
            fixed10(study.worst),
            study.spread(),
            study.records.len()
        );
    }
    Ok(())
}
