//! Solve n and write an SVG with unit-length pairs in red.
//!
//! cargo run --release --example render_svg -- 8 polygon8.svg

use lsp_lab::io::write_atomic;
use lsp_lab::render::{render_svg, unit_pairs, RenderOptions};
use lsp_lab::{build_problem, initial_point, solve, ModelSpec, SolverOptions, Variant};

fn main() -> lsp_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(8);
    let path = args.next().unwrap_or_else(|| format!("polygon{n}.svg"));

    let spec = ModelSpec::new(n, Variant::Tightened)?;
    let report = solve(&build_problem(&spec), &initial_point(&spec), &SolverOptions::default())?;
    let opts = RenderOptions::default();
    write_atomic(path.as_ref(), render_svg(&report.config, &opts).as_bytes())?;
    println!(
        "wrote {path}: area {:.10}, {} unit-length pairs",
        report.objective,
        unit_pairs(&report.config, opts.unit_tolerance).len()
    );
    Ok(())
}
