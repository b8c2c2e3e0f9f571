//! Finite-difference check of the objective gradient and constraint
//! Jacobian at random feasible-looking points.

use lsp_lab::experiments::random_start;
use lsp_lab::oracle::{check_problem_derivatives, FD_STEP};
use lsp_lab::{build_problem, ModelSpec, Variant};

fn main() -> lsp_lab::Result<()> {
    for n in [6, 13, 20] {
        for variant in [Variant::Standard, Variant::Tightened] {
            let problem = build_problem(&ModelSpec::new(n, variant)?);
            let mut worst = (0.0f64, 0.0f64);
            for seed in 0..10 {
                let x = problem.vars_from_config(&random_start(n, seed)?)?;
                let c = check_problem_derivatives(&problem, &x, FD_STEP)?;
                worst = (worst.0.max(c.gradient), worst.1.max(c.jacobian));
            }
            println!("n = {n:>2} {variant:<9}: gradient {:.1e} jacobian {:.1e}", worst.0, worst.1);
        }
    }
    Ok(())
}
