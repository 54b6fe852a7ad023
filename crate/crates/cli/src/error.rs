use std::fmt;

use als_core::{AnalysisError, ExperimentError, LinalgError, SolverError};

/// Process exit codes.
pub mod code {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const DIMENSION: i32 = 3;
    pub const RANK: i32 = 4;
    pub const DIVERGENCE: i32 = 5;
    pub const SWEEP_DIVERGENCES: i32 = 6;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(code::PARSE, message)
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        Self::new(code::IO, format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        let code = match e {
            LinalgError::Parse { .. } | LinalgError::NonFinite { .. } => code::PARSE,
            LinalgError::DimensionMismatch { .. } | LinalgError::Empty | LinalgError::Underdetermined { .. } => {
                code::DIMENSION
            }
            LinalgError::RankDeficient { .. } => code::RANK,
            LinalgError::NoConvergence { .. } => code::IO,
        };
        Self::new(code, e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Linalg(inner) => inner.into(),
            SolverError::Divergence { .. } => Self::new(code::DIVERGENCE, e.to_string()),
            SolverError::InvalidStepSize(_) | SolverError::InvalidConfig(_) => Self::usage(e.to_string()),
            SolverError::DegenerateRow { .. } => Self::new(code::RANK, e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Linalg(inner) => inner.into(),
            AnalysisError::Solver(inner) => inner.into(),
            AnalysisError::TraceTooShort { .. } | AnalysisError::MissingGroundTruth => Self::usage(e.to_string()),
            AnalysisError::RecursionMismatch { .. } => Self::new(code::IO, e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Linalg(inner) => inner.into(),
            ExperimentError::Solver(inner) => inner.into(),
            ExperimentError::Analysis(inner) => inner.into(),
            ExperimentError::InvalidSpec(_) => Self::usage(e.to_string()),
            ExperimentError::DegenerateColumns | ExperimentError::Generation { .. } => {
                Self::new(code::RANK, e.to_string())
            }
        }
    }
}
