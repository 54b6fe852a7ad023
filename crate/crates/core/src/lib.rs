//! Approximate least squares (ALS): a cyclic single-row gradient iteration
//! for overdetermined systems `y = Hx + n`, with its final estimate averaged
//! over the last `m` iterates.
//!
//! Alongside ALS the crate carries the baselines it is measured against
//! (batch least squares, full-gradient steepest descent, recursive
//! sequential least squares), exact multiplication counters, the cycle
//! matrix analysis that governs convergence, and seeded experiment drivers.
//!
//! ```
//! use als_core::experiments::{gen_sine_problem, reference_als_config, SineScenarioSpec};
//! use als_core::linalg::batch_ls_solve;
//! use als_core::solvers::als_solve;
//!
//! let problem = gen_sine_problem(&SineScenarioSpec::default()).unwrap();
//! let config = reference_als_config(&problem.h).unwrap();
//! let run = als_solve(&problem, &config).unwrap();
//! let ls = batch_ls_solve(&problem).unwrap();
//! assert_eq!(run.estimate.len(), ls.len());
//! ```

pub mod analysis;
pub mod counter;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod solvers;

pub use counter::MulCounter;
pub use error::{AnalysisError, ExperimentError, LinalgError, SolverError};
pub use linalg::{DenseMatrix, ProblemInstance, Vector};
pub use solvers::{Method, SolverConfig, SolverRun};
