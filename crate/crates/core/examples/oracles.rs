//! Independent reference values: closed forms and an exhaustive grid search.

use lsp_lab::oracle::{grid_search_small, initial_point_area, regular_polygon_area};
use lsp_lab::{build_problem, initial_point, solve, ModelSpec, SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    for n in [3, 5, 7, 9] {
        let spec = ModelSpec::new(n, Variant::Tightened)?;
        let r = solve(&build_problem(&spec), &initial_point(&spec), &SolverOptions::default())?;
        let exact = regular_polygon_area(n)?;
        println!("n = {n}: solver {:.12} regular {:.12} diff {:+.1e}", r.objective, exact, r.objective - exact);
    }
    println!("start area n = 6: {:.10}", initial_point_area(6)?);
    for (n, step) in [(3, 0.05), (4, 0.05)] {
        let g = grid_search_small(n, step)?;
        println!("grid n = {n} step {step}: {:.7} (a lower bound on the optimum)", g.value);
    }
    Ok(())
}
