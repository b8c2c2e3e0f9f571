//! Solve one tightened instance and print its vertices.
//!
//! cargo run --release --example solve_one -- 8

use lsp_lab::io::{fixed10, sci10};
use lsp_lab::{build_problem, initial_point, solve, ModelSpec, SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let spec = ModelSpec::new(n, Variant::Tightened)?;
    let problem = build_problem(&spec);
    let report = solve(&problem, &initial_point(&spec), &SolverOptions::default())?;

    println!("n = {n}: {} variables, {} constraints", problem.num_vars(), problem.num_constraints());
    println!(
        "area {}  violation {}  converged {}  {} outer / {} inner iterations",
        fixed10(report.objective),
        sci10(report.max_violation),
        report.converged,
        report.outer_iterations,
        report.inner_iterations
    );
    for (k, [x, y]) in report.config.cartesian().into_iter().enumerate() {
        println!("  v{:<3} x = {x:+.10}  y = {y:+.10}", k + 1);
    }
    Ok(())
}
