use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty vector or matrix")]
    Empty,
    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },
    #[error("observation matrix is {rows}x{cols}; need rows >= cols")]
    Underdetermined { rows: usize, cols: usize },
    #[error("rank deficient: pivot {pivot:e} in column {column} is below tolerance relative to {largest:e}")]
    RankDeficient { column: usize, pivot: f64, largest: f64 },
    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate})")]
    NoConvergence { estimate: f64, iterations: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("iterate became non-finite at iteration {iteration}")]
    Divergence { iteration: usize },
    #[error("step size must be positive, got {0}")]
    InvalidStepSize(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("row {row} of the observation matrix is all zeros")]
    DegenerateRow { row: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("replayed error recursion deviates from solver trace by {deviation:e} at iteration {iteration}")]
    RecursionMismatch { iteration: usize, deviation: f64 },
    #[error("problem has no ground truth or noise vector to replay against")]
    MissingGroundTruth,
    #[error("trace of length {len} is shorter than three cycles of {cycle}")]
    TraceTooShort { len: usize, cycle: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("invalid scenario: {0}")]
    InvalidSpec(String),
    #[error("observation matrix has degenerate (linearly dependent) columns")]
    DegenerateColumns,
    #[error("could not draw a full-rank {rows}x{cols} matrix in {attempts} attempts")]
    Generation { rows: usize, cols: usize, attempts: usize },
}
