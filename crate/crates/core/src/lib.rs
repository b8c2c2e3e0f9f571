//! Largest small polygon laboratory.
//!
//! The n-vertex polygon of unit diameter with maximal area is modelled in
//! polar coordinates around a fixed vertex at the origin. This crate builds
//! the standard and tightened nonlinear models, solves them with an embedded
//! augmented Lagrangian solver, and provides the surrounding experiment
//! machinery: parameter sweeps, log-log slope estimates, asymptotic regression
//! fits, CSV/JSON persistence and SVG rendering.
//!
//! ```
//! use lsp_lab::model::{build_problem, initial_point, ModelSpec, Variant};
//! use lsp_lab::solver::{solve, SolverOptions};
//!
//! let spec = ModelSpec::new(6, Variant::Tightened).unwrap();
//! let problem = build_problem(&spec);
//! let report = solve(&problem, &initial_point(&spec), &SolverOptions::default()).unwrap();
//! assert!(report.converged);
//! assert!((report.objective - 0.674981).abs() < 1e-5);
//! ```

pub mod cli;
pub mod error;
pub mod experiments;
pub mod io;
pub mod model;
pub mod oracle;
pub mod regression;
pub mod render;
pub mod solver;

pub use error::{LspError, Result};
pub use model::{build_problem, initial_point, ModelSpec, NlpProblem, Parity, PolygonConfig, Variant};
pub use solver::{solve, SolveReport, SolverOptions};

/// Area of the unit-diameter disk, the limit of the optimal areas.
pub const AREA_LIMIT: f64 = std::f64::consts::FRAC_PI_4;
