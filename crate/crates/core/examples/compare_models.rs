//! Standard and tightened models side by side from the same start.

use lsp_lab::experiments::compare_variants;
use lsp_lab::io::fixed10;
use lsp_lab::SolverOptions;

fn main() -> lsp_lab::Result<()> {
    let ns: Vec<usize> = (6..=30).step_by(4).collect();
    println!("{:>4} {:>14} {:>14} {:>10}", "n", "tightened", "standard", "diff");
    for c in compare_variants(&ns, &SolverOptions::default(), None)? {
        println!(
            "{:>4} {:>14} {:>14} {:>+10.2e}",
            c.n,
            fixed10(c.tightened.objective),
            fixed10(c.standard.objective),
            c.tightened.objective - c.standard.objective
        );
    }
    Ok(())
}
