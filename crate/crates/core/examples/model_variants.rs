//! Compare the sizes of the standard, tightened and symmetric models.

use lsp_lab::{build_problem, ModelSpec, Variant};

fn main() -> lsp_lab::Result<()> {
    println!("{:>4} {:>14} {:>14} {:>14}", "n", "standard", "tightened", "tight+sym");
    for n in [3, 4, 5, 6, 10, 11, 20, 100] {
        let free = |spec: ModelSpec| {
            let p = build_problem(&spec);
            let movable = p.lower().iter().zip(p.upper()).filter(|(lo, hi)| lo < hi).count();
            format!("{movable}/{}", p.num_constraints())
        };
        let sym = if n % 2 == 0 {
            free(ModelSpec::new(n, Variant::Tightened)?.with_symmetry(true)?)
        } else {
            "-".into()
        };
        println!(
            "{n:>4} {:>14} {:>14} {sym:>14}",
            free(ModelSpec::new(n, Variant::Standard)?),
            free(ModelSpec::new(n, Variant::Tightened)?)
        );
    }
    println!("(movable variables / constraint rows)");
    Ok(())
}
