use lsp_lab::experiments::random_start;
use lsp_lab::oracle::fd_check;
use lsp_lab::solver::{
    augmented_lagrangian_value_and_gradient, inner_minimize, update_multipliers, InnerOptions,
};
use lsp_lab::{build_problem, initial_point, solve, ModelSpec, SolveReport, SolverOptions, Variant};

fn run(n: usize, variant: Variant) -> SolveReport {
    let spec = ModelSpec::new(n, variant).unwrap();
    solve(&build_problem(&spec), &initial_point(&spec), &SolverOptions::default()).unwrap()
}

#[test]
fn small_tightened_instances() {
    let cases = [(3, 0.75f64.sqrt() / 2.0, 1e-6), (4, 0.5, 1e-5), (6, 0.674981, 1e-5)];
    for (n, want, tol) in cases {
        let r = run(n, Variant::Tightened);
        assert!(r.converged, "n = {n}");
        assert!((r.objective - want).abs() <= tol, "n = {n}: {}", r.objective);
        assert!(r.max_violation <= 1e-7);
        assert_eq!(r.objective, r.config.area());
    }
}

#[test]
fn report_is_consistent_with_model() {
    let spec = ModelSpec::new(8, Variant::Standard).unwrap();
    let problem = build_problem(&spec);
    let r = solve(&problem, &initial_point(&spec), &SolverOptions::default()).unwrap();
    assert_eq!(r.max_violation, problem.max_violation(&r.config).unwrap());
    assert!(r.config.is_feasible(lsp_lab::model::FEASIBILITY_TOL));
    assert!(r.inner_iterations > 0 && r.outer_iterations > 0);
    assert!(r.runtime_seconds >= 0.0);
}

#[test]
fn solves_are_deterministic() {
    let a = run(10, Variant::Standard);
    let b = run(10, Variant::Standard);
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    assert_eq!((a.outer_iterations, a.inner_iterations), (b.outer_iterations, b.inner_iterations));
}

#[test]
fn symmetric_model_reaches_the_same_area() {
    let spec = ModelSpec::new(8, Variant::Tightened).unwrap().with_symmetry(true).unwrap();
    let r = solve(&build_problem(&spec), &initial_point(&spec), &SolverOptions::default()).unwrap();
    assert!(r.converged);
    assert!((r.objective - 0.726868).abs() < 1e-5);
    let m = r.config.mirrored();
    for (a, b) in r.config.r().iter().zip(m.r()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn out_of_bounds_start_is_clipped() {
    let spec = ModelSpec::new(5, Variant::Standard).unwrap();
    let start = lsp_lab::PolygonConfig::from_free(vec![1.7; 4], vec![-0.3, 0.5, 1.0, 4.0]).unwrap();
    let r = solve(&build_problem(&spec), &start, &SolverOptions::default()).unwrap();
    assert!(r.max_violation <= 1e-7);
    assert!(r.config.r().iter().all(|&v| (0.0..=1.0).contains(&v)));
}

#[test]
fn exhausted_iterations_are_reported_not_raised() {
    let opts = SolverOptions { outer_max: 1, inner_max: 3, ..Default::default() };
    let spec = ModelSpec::new(12, Variant::Standard).unwrap();
    let r = solve(&build_problem(&spec), &initial_point(&spec), &opts).unwrap();
    assert!(!r.converged);
    assert!(r.objective.is_finite());
}

#[test]
fn invalid_options_are_rejected() {
    let spec = ModelSpec::new(5, Variant::Standard).unwrap();
    let p = build_problem(&spec);
    let bad = [
        SolverOptions { penalty_growth: 1.0, ..Default::default() },
        SolverOptions { violation_target: 0.0, ..Default::default() },
        SolverOptions { lbfgs_memory: 0, ..Default::default() },
    ];
    for opts in bad {
        assert!(solve(&p, &initial_point(&spec), &opts).is_err());
    }
}

#[test]
fn al_gradient_matches_differences() {
    let problem = build_problem(&ModelSpec::new(6, Variant::Standard).unwrap());
    let m = problem.num_constraints();
    for seed in 0..5 {
        let x = problem.vars_from_config(&random_start(6, seed).unwrap()).unwrap();
        let lambda: Vec<f64> = (0..m).map(|k| (k % 3) as f64 * 0.4).collect();
        let mut grad = vec![0.0; x.len()];
        augmented_lagrangian_value_and_gradient(&problem, &x, &lambda, 10.0, &mut grad);
        let value = |p: &[f64]| {
            let mut g = vec![0.0; p.len()];
            augmented_lagrangian_value_and_gradient(&problem, p, &lambda, 10.0, &mut g)
        };
        assert!(fd_check(value, &grad, &x, 1e-6).unwrap() <= 1e-6, "seed {seed}");
    }
}

#[test]
fn al_reduces_to_negative_area_when_inactive() {
    let spec = ModelSpec::new(6, Variant::Standard).unwrap();
    let problem = build_problem(&spec);
    let x = problem.vars_from_config(&initial_point(&spec).scaled(0.4)).unwrap();
    let mut grad = vec![0.0; x.len()];
    let v = augmented_lagrangian_value_and_gradient(&problem, &x, &vec![0.0; problem.num_constraints()], 10.0, &mut grad);
    assert_eq!(v, -problem.objective(&x));
}

#[test]
fn multiplier_update_examples() {
    let mut lambda = [1.0, 0.0, 2.0];
    update_multipliers(&mut lambda[..1], &[-1.0], 0.5);
    update_multipliers(&mut lambda[1..2], &[-0.2], 10.0);
    update_multipliers(&mut lambda[2..], &[0.1], 10.0);
    assert_eq!(lambda, [0.5, 0.0, 3.0]);
}

#[test]
fn inner_rosenbrock() {
    let rosen = |x: &[f64], g: &mut [f64]| {
        let (a, b) = (x[0], x[1]);
        g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
        g[1] = 200.0 * (b - a * a);
        (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
    };
    let opts = InnerOptions { tol: 1e-10, max_iter: 5000, ..Default::default() };
    let r = inner_minimize(rosen, &[-2.0; 2], &[2.0; 2], &[-1.2, 1.0], &opts);
    assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{:?}", r.x);
}
