//! Sweep even n and print the table as CSV.

use lsp_lab::experiments::{run_sweep, StartKind};
use lsp_lab::io::records_to_csv;
use lsp_lab::{SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    let ns: Vec<usize> = (4..=20).step_by(2).collect();
    let records = run_sweep(&ns, Variant::Tightened, StartKind::PaperInit, &SolverOptions::default(), None)?;
    print!("{}", records_to_csv(&records)?);
    Ok(())
}
