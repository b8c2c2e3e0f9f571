//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::time::Instant;

use common::{even_objective, EVEN_TABLE, ODD_TABLE};
use lsp_lab::experiments::{estimate_slope, random_start, solve_instance, StartKind, SweepRecord, EVEN_SELECTION, ODD_SELECTION};
use lsp_lab::io::SolveDocument;
use lsp_lab::model::{build_problem, ModelSpec, Parity, Variant};
use lsp_lab::oracle::{check_problem_derivatives, regular_polygon_area, FD_STEP};
use lsp_lab::regression::{fit, fit_points, goodness, PUBLISHED_EVEN};
use lsp_lab::render::{render_svg, RenderOptions};
use lsp_lab::solver::{SolveReport, SolverOptions};

type Outcome = Result<String, String>;

/// Solves each (n, variant) once from the default start and keeps every
/// report for the later cross-criterion checks.
#[derive(Default)]
struct Runs {
    opts: SolverOptions,
    cache: BTreeMap<(usize, Variant), (SweepRecord, SolveReport)>,
}

impl Runs {
    fn get(&mut self, n: usize, variant: Variant) -> &(SweepRecord, SolveReport) {
        let opts = self.opts;
        self.cache
            .entry((n, variant))
            .or_insert_with(|| solve_instance(n, variant, StartKind::PaperInit, &opts).expect("valid instance"))
    }

    fn record(&mut self, n: usize, variant: Variant) -> SweepRecord {
        self.get(n, variant).0.clone()
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn verdict(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join("; ")))
    }
}

const CRITERION1_NS: [usize; 14] = [4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 28, 32, 36, 40];

fn even_table_reproduction(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for n in CRITERION1_NS {
        let rec = runs.record(n, Variant::Tightened);
        let err = (rec.objective - even_objective(n)).abs();
        worst = worst.max(err);
        check(&mut failures, rec.converged && err <= 1e-5 && rec.max_violation <= 1e-7, || {
            format!("n={n}: objective {:.10} violation {:.1e} converged {}", rec.objective, rec.max_violation, rec.converged)
        });
    }
    verdict(failures, format!("max |A - table| = {worst:.2e} over {} instances", CRITERION1_NS.len()))
}

fn odd_oracle_agreement(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for n in (3..=39).step_by(2) {
        let rec = runs.record(n, Variant::Tightened);
        let err = (rec.objective - regular_polygon_area(n).unwrap()).abs();
        worst = worst.max(err);
        check(&mut failures, rec.converged && err <= 1e-7, || format!("n={n}: error {err:.2e}"));
    }
    verdict(failures, format!("max |A - regular| = {worst:.2e} for odd 3..39"))
}

fn midscale_even(runs: &mut Runs) -> Outcome {
    let rec = runs.record(100, Variant::Tightened);
    let err = (rec.objective - 0.785072).abs();
    let detail = format!(
        "A(100) = {:.10}, |A - 0.785072| = {err:.2e}, violation {:.1e}, {:.1}s",
        rec.objective, rec.max_violation, rec.runtime_seconds
    );
    if rec.converged && err <= 1e-5 && rec.max_violation <= 1e-7 && rec.runtime_seconds <= 600.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn slope_reproduction(runs: &mut Runs) -> Outcome {
    let even: Vec<SweepRecord> = EVEN_SELECTION.iter().map(|&n| runs.record(n, Variant::Tightened)).collect();
    let odd: Vec<SweepRecord> = ODD_SELECTION
        .iter()
        .filter(|&&n| n >= 5)
        .map(|&n| runs.record(n, Variant::Tightened))
        .collect();
    let e = estimate_slope(&even, Parity::Even).map_err(|e| e.to_string())?;
    let o = estimate_slope(&odd, Parity::Odd).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    check(&mut failures, (e.slope + 2.04618).abs() <= 0.05, || format!("even slope {:.5}", e.slope));
    check(&mut failures, (o.slope + 1.99848).abs() <= 0.05, || format!("odd slope {:.5}", o.slope));
    let unconverged: Vec<usize> = even.iter().chain(&odd).filter(|r| !r.converged).map(|r| r.n).collect();
    verdict(
        failures,
        format!(
            "even slope {:.5} over {}..{}, odd slope {:.5} over {}..{}; unconverged n: {unconverged:?}",
            e.slope, e.n_min, e.n_max, o.slope, o.n_min, o.n_max
        ),
    )
}

fn derivative_correctness(_: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let (mut grad_worst, mut jac_worst): (f64, f64) = (0.0, 0.0);
    for n in [6, 13, 20] {
        for variant in [Variant::Standard, Variant::Tightened] {
            let problem = build_problem(&ModelSpec::new(n, variant).unwrap());
            for seed in 0..10 {
                let x = problem.vars_from_config(&random_start(n, 1000 + seed).unwrap()).unwrap();
                let c = check_problem_derivatives(&problem, &x, FD_STEP).unwrap();
                grad_worst = grad_worst.max(c.gradient);
                jac_worst = jac_worst.max(c.jacobian);
                check(&mut failures, c.gradient <= 1e-6 && c.jacobian <= 1e-6, || {
                    format!("n={n} {variant} seed {seed}: gradient {:.1e} jacobian {:.1e}", c.gradient, c.jacobian)
                });
            }
        }
    }
    verdict(failures, format!("worst relative error: gradient {grad_worst:.1e}, jacobian {jac_worst:.1e}"))
}

fn model_counts(_: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    for &(n, vars, cons, _) in EVEN_TABLE.iter().chain(ODD_TABLE) {
        for variant in [Variant::Standard, Variant::Tightened] {
            let p = build_problem(&ModelSpec::new(n, variant).unwrap());
            check(&mut failures, p.num_vars() == vars && p.num_constraints() == cons, || {
                format!("n={n} {variant}: {}/{} vs {vars}/{cons}", p.num_vars(), p.num_constraints())
            });
        }
    }
    verdict(failures, format!("{} tabulated rows checked for both models", EVEN_TABLE.len() + ODD_TABLE.len()))
}

fn regression_round_trip(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let synthetic: Vec<(usize, f64)> = (2..=50)
        .map(|k| 2 * k)
        .map(|n| {
            let x = n as f64;
            (n, FRAC_PI_4 + PUBLISHED_EVEN[0] / x + PUBLISHED_EVEN[1] / (x * x) + PUBLISHED_EVEN[2] / (x * x * x))
        })
        .collect();
    let f = fit_points(&synthetic, Parity::Even).map_err(|e| e.to_string())?;
    let rt = f
        .coefficients()
        .iter()
        .zip(PUBLISHED_EVEN)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    check(&mut failures, rt <= 1e-9, || format!("round trip error {rt:.1e}"));

    let own: Vec<SweepRecord> = EVEN_SELECTION
        .iter()
        .filter(|&&n| n <= 100)
        .map(|&n| runs.record(n, Variant::Tightened))
        .collect();
    let f = fit(&own, Parity::Even).map_err(|e| e.to_string())?;
    let points: Vec<(usize, f64)> = own.iter().map(|r| (r.n, r.objective)).collect();
    let g = goodness(&f, &points).map_err(|e| e.to_string())?;
    let p_max = f.p_values.iter().copied().fold(0.0, f64::max);
    check(&mut failures, p_max < 1e-4, || format!("p-value {p_max:.1e}"));
    let (worst_n, worst_r) = g
        .residuals
        .iter()
        .copied()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap_or((0, 0.0));
    check(&mut failures, g.residual_max <= 2e-4, || {
        format!("max residual {:.2e} at n={worst_n} ({worst_r:+.2e})", g.residual_max)
    });
    verdict(
        failures,
        format!(
            "round trip {rt:.1e}; fit on {}..{}: c = ({:.6}, {:.6}, {:.6}), max p {p_max:.1e}, max residual {:.2e}",
            f.n_min, f.n_max, f.c1, f.c2, f.c3, g.residual_max
        ),
    )
}

fn tightened_dominance(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for n in (6..=80).step_by(2) {
        let t = runs.record(n, Variant::Tightened).objective;
        let s = runs.record(n, Variant::Standard).objective;
        worst = worst.min(t - s);
        check(&mut failures, t >= s - 1e-9, || format!("n={n}: tightened {t:.10} < standard {s:.10}"));
    }
    verdict(failures, format!("min (tightened - standard) = {worst:+.2e} over even 6..80"))
}

fn isodiametric_sanity(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let converged: Vec<(usize, Variant, f64)> = runs
        .cache
        .iter()
        .filter(|(_, (rec, _))| rec.converged)
        .map(|(&(n, v), (rec, _))| (n, v, rec.objective))
        .collect();
    for &(n, v, a) in &converged {
        check(&mut failures, a < FRAC_PI_4, || format!("n={n} {v}: {a:.10} >= π/4"));
    }
    let seq: Vec<f64> = CRITERION1_NS.iter().map(|&n| runs.record(n, Variant::Tightened).objective).collect();
    check(&mut failures, seq.windows(2).all(|w| w[0] < w[1]), || "criterion-1 objectives not strictly increasing".into());
    verdict(failures, format!("{} converged objectives below π/4; criterion-1 sequence increasing", converged.len()))
}

/// `(i, j)` pairs of the red segments in an SVG document.
fn red_pairs(svg: &str) -> Vec<(usize, usize)> {
    let attr = |line: &str, key: &str| -> usize {
        let start = line.find(key).expect("attribute present") + key.len();
        line[start..].split('"').next().unwrap().parse().unwrap()
    };
    svg.lines()
        .filter(|l| l.contains(r#"class="unit""#))
        .map(|l| (attr(l, r#"data-i=""#), attr(l, r#"data-j=""#)))
        .collect()
}

fn rendering(runs: &mut Runs) -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for n in [3, 4, 6, 18] {
        let report = runs.get(n, Variant::Tightened).1.clone();
        let svg = render_svg(&report.config, &RenderOptions::default());
        let json = SolveDocument::new(Variant::Tightened, false, &report).to_json().unwrap();
        let doc = SolveDocument::from_json(&json).unwrap();
        let red = red_pairs(&svg);
        let worst = red
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (&doc.vertices[i], &doc.vertices[j]);
                ((a.x - b.x).hypot(a.y - b.y) - 1.0).abs()
            })
            .fold(0.0, f64::max);
        check(&mut failures, worst <= 1e-6, || format!("n={n}: red segment off by {worst:.1e}"));
        if n == 4 {
            check(&mut failures, red.len() == 2, || format!("n=4: {} red segments", red.len()));
        }
        summary.push(format!("n={n}: {} red", red.len()));
    }
    verdict(failures, summary.join(", "))
}

fn main() {
    let criteria: [(u32, &str, fn(&mut Runs) -> Outcome); 10] = [
        (1, "even-n table reproduction", even_table_reproduction),
        (2, "odd-n oracle agreement", odd_oracle_agreement),
        (3, "midscale even check", midscale_even),
        (4, "slope reproduction", slope_reproduction),
        (5, "derivative correctness", derivative_correctness),
        (6, "model-count identities", model_counts),
        (7, "regression round-trip", regression_round_trip),
        (8, "tightened dominance", tightened_dominance),
        (10, "rendering", rendering),
        // runs last so it sees every objective produced above
        (9, "isodiametric sanity", isodiametric_sanity),
    ];
    let mut runs = Runs::default();
    let mut lines = BTreeMap::new();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let outcome = f(&mut runs);
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        lines.insert(id, (outcome.is_ok(), format!("{tag} criterion {id:>2} ({name}, {secs:.1}s): {detail}")));
    }
    for (_, line) in lines.values() {
        println!("{line}");
    }
    let failed = lines.values().filter(|(ok, _)| !ok).count();
    println!("acceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
