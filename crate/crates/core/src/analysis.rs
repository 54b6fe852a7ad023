//! Convergence machinery for the cyclic iteration.
//!
//! One ALS step maps the error `e = x̂ − x` as
//! `e ← (I − 2μ·h hᵀ) e + 2μ·h·n`, so a full pass over the rows applies the
//! cycle matrix `M = M_m ⋯ M_1` to the initial-condition part of the error.
//! This module builds those matrices, replays the error recursion split into
//! its initial-condition and noise-driven parts, and locates the point where
//! the error-norm trace becomes periodic.

use crate::error::AnalysisError;
use crate::linalg::{dot_unchecked, format_f64, spectral_norm, DenseMatrix, ProblemInstance, Vector};
use crate::solvers::{als_solve, cyclic_index, SolverConfig, TraceOptions};

/// Maximum allowed deviation between the replayed recursion and the solver.
pub const REPLAY_TOLERANCE: f64 = 1e-10;

/// Default relative tolerance for [`detect_periodic_onset`].
pub const ONSET_REL_TOL: f64 = 1e-3;

/// Norm differences below this are treated as zero by the onset detector.
pub const ONSET_ABS_FLOOR: f64 = 1e-14;

/// `I − 2μ·h hᵀ`.
pub fn row_iteration_matrix(h_row: &[f64], mu: f64) -> DenseMatrix {
    let p = h_row.len();
    let two_mu = 2.0 * mu;
    let mut out = DenseMatrix::identity(p);
    for a in 0..p {
        for b in a..p {
            let v = out[(a, b)] - two_mu * h_row[a] * h_row[b];
            out.set(a, b, v);
            out.set(b, a, v);
        }
    }
    out
}

/// Left-multiplies `acc` by `I − 2μ·h hᵀ` in place: `acc − 2μ·h (hᵀ acc)`.
fn apply_row_factor(acc: &mut DenseMatrix, h: &[f64], two_mu: f64) {
    let p = h.len();
    for col in 0..p {
        let mut proj = 0.0;
        for (r, hr) in h.iter().enumerate() {
            proj += hr * acc[(r, col)];
        }
        let s = two_mu * proj;
        for (r, hr) in h.iter().enumerate() {
            acc.set(r, col, acc[(r, col)] - s * hr);
        }
    }
}

fn cycle_product(h: &DenseMatrix, mu: f64) -> DenseMatrix {
    let mut m = DenseMatrix::identity(h.cols());
    for row in h.row_iter() {
        apply_row_factor(&mut m, row, 2.0 * mu);
    }
    m
}

/// `‖M_m ⋯ M_1‖₂` without keeping the per-row factors.
pub fn cycle_norm(h: &DenseMatrix, mu: f64) -> Result<f64, crate::error::LinalgError> {
    spectral_norm(&cycle_product(h, mu))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleAnalysis {
    pub mu: f64,
    pub per_row_matrices: Vec<DenseMatrix>,
    /// `M_m ⋯ M_1`.
    pub cycle_matrix: DenseMatrix,
    pub spectral_norm: f64,
    /// `‖M‖₂ < 1`.
    pub stable: bool,
}

impl CycleAnalysis {
    pub const CSV_HEADER: &'static str = "m,p,mu,spectral_norm,stable";

    pub fn rows(&self) -> usize {
        self.per_row_matrices.len()
    }

    pub fn cols(&self) -> usize {
        self.cycle_matrix.cols()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.rows(),
            self.cols(),
            format_f64(self.mu),
            format_f64(self.spectral_norm),
            self.stable
        )
    }
}

pub fn cycle_matrix(h: &DenseMatrix, mu: f64) -> Result<CycleAnalysis, AnalysisError> {
    let per_row_matrices: Vec<DenseMatrix> = h.row_iter().map(|row| row_iteration_matrix(row, mu)).collect();
    let m = cycle_product(h, mu);
    let norm = spectral_norm(&m)?;
    Ok(CycleAnalysis { mu, per_row_matrices, cycle_matrix: m, spectral_norm: norm, stable: norm < 1.0 })
}

/// Error at iteration `k`, split as `e_total = e_init + e_noise`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorDecomposition {
    pub k: usize,
    pub e_total: Vector,
    /// Initial-condition part, started from `−x`.
    pub e_init: Vector,
    /// Noise-driven part, started from zero.
    pub e_noise: Vector,
    /// `‖e_total − (x̂^(k) − x)‖∞` against the solver trace.
    pub solver_deviation: f64,
}

pub const DECOMPOSITION_CSV_HEADER: &str = "k,e_total_norm,e_init_norm,e_noise_norm";

pub fn decomposition_csv(records: &[ErrorDecomposition]) -> String {
    let mut out = format!("{DECOMPOSITION_CSV_HEADER}\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.k,
            format_f64(crate::linalg::two_norm(&r.e_total)),
            format_f64(crate::linalg::two_norm(&r.e_init)),
            format_f64(crate::linalg::two_norm(&r.e_noise))
        ));
    }
    out
}

/// Replays both error recursions and checks their sum against an actual
/// ALS run with the same configuration. Record `k` corresponds to iteration
/// `k`; the initial state (`k = 0`) is not included.
pub fn replay_error_recursion(
    problem: &ProblemInstance,
    config: &SolverConfig,
) -> Result<Vec<ErrorDecomposition>, AnalysisError> {
    let (x_true, noise) = match (&problem.x_true, &problem.noise) {
        (Some(x), Some(n)) => (x, n),
        _ => return Err(AnalysisError::MissingGroundTruth),
    };
    let config = config.clone().with_trace(TraceOptions::full());
    let run = als_solve(problem, &config)?;

    let m = problem.rows();
    let two_mu = 2.0 * config.mu;
    let mut e_init: Vec<f64> = x_true.iter().map(|v| -v).collect();
    let mut e_noise = vec![0.0; problem.cols()];
    let mut out = Vec::with_capacity(run.trace.len());

    for point in &run.trace {
        let k = point.k;
        let row = cyclic_index(k, m) - 1;
        let h = problem.h.row(row);

        let s = two_mu * dot_unchecked(h, &e_init);
        e_init.iter_mut().zip(h).for_each(|(e, hi)| *e -= s * hi);

        let s = two_mu * dot_unchecked(h, &e_noise);
        let drive = two_mu * noise[row];
        e_noise.iter_mut().zip(h).for_each(|(e, hi)| *e += drive * hi - s * hi);

        let e_total: Vec<f64> = e_init.iter().zip(&e_noise).map(|(a, b)| a + b).collect();
        let estimate = point.estimate.as_ref().expect("full trace keeps estimates");
        let deviation = e_total
            .iter()
            .zip(estimate.iter().zip(x_true.iter()))
            .fold(0.0f64, |acc, (e, (xh, x))| acc.max((e - (xh - x)).abs()));
        if deviation.is_nan() || deviation > REPLAY_TOLERANCE {
            return Err(AnalysisError::RecursionMismatch { iteration: k, deviation });
        }
        out.push(ErrorDecomposition {
            k,
            e_total: Vector::from_vec_unchecked(e_total),
            e_init: Vector::from_vec_unchecked(e_init.clone()),
            e_noise: Vector::from_vec_unchecked(e_noise.clone()),
            solver_deviation: deviation,
        });
    }
    Ok(out)
}

/// Result of [`detect_periodic_onset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicOnset {
    /// Trace index at which the first of two matching cycles starts.
    At(usize),
    /// No two consecutive cycles matched before the end of the trace.
    Never,
}

/// Finds the smallest cycle-aligned index `c·m` such that cycle `c` and
/// cycle `c + 1` of the error-norm trace agree to `rel_tol` in relative
/// max-norm. Differences below [`ONSET_ABS_FLOOR`] count as agreement.
pub fn detect_periodic_onset(
    error_norm_trace: &[f64],
    m: usize,
    rel_tol: f64,
) -> Result<PeriodicOnset, AnalysisError> {
    if m == 0 || error_norm_trace.len() < 3 * m {
        return Err(AnalysisError::TraceTooShort { len: error_norm_trace.len(), cycle: m });
    }
    let cycles = error_norm_trace.len() / m;
    for c in 0..cycles - 1 {
        let a = &error_norm_trace[c * m..(c + 1) * m];
        let b = &error_norm_trace[(c + 1) * m..(c + 2) * m];
        let diff = a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        let scale = b.iter().fold(0.0f64, |acc, y| acc.max(y.abs()));
        if diff <= (rel_tol * scale).max(ONSET_ABS_FLOOR) {
            return Ok(PeriodicOnset::At(c * m));
        }
    }
    Ok(PeriodicOnset::Never)
}

/// Mean of `x̂^(k) − x` over the window.
pub fn averaged_error(trace_window: &[Vector], x_true: &[f64]) -> Result<Vector, AnalysisError> {
    let first = trace_window.first().ok_or(crate::error::LinalgError::Empty)?;
    let p = x_true.len();
    let mut sum = vec![0.0; p];
    for v in trace_window {
        if v.len() != p {
            return Err(crate::error::LinalgError::DimensionMismatch { expected: p, found: v.len() }.into());
        }
        sum.iter_mut().zip(v.iter()).for_each(|(s, x)| *s += x);
    }
    debug_assert_eq!(first.len(), p);
    let scale = 1.0 / trace_window.len() as f64;
    Ok(Vector::from_vec_unchecked(
        sum.iter().zip(x_true).map(|(s, x)| s * scale - x).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_matrix_examples() {
        assert_eq!(row_iteration_matrix(&[1.0], 0.25).as_slice(), &[0.5]);
        assert_eq!(row_iteration_matrix(&[1.0, 0.0], 0.25).as_slice(), &[0.5, 0.0, 0.0, 1.0]);
        let tiny = row_iteration_matrix(&[0.3, -0.7, 2.0], 1e-300);
        assert!(tiny.max_abs_diff(&DenseMatrix::identity(3)).unwrap() < 1e-15);
    }

    #[test]
    fn scalar_cycle() {
        let h = DenseMatrix::from_rows(&[vec![1.0]]).unwrap();
        let a = cycle_matrix(&h, 0.25).unwrap();
        assert_eq!(a.cycle_matrix.as_slice(), &[0.5]);
        assert!((a.spectral_norm - 0.5).abs() < 1e-12);
        assert!(a.stable);
        assert_eq!(a.csv_row().split(',').count(), 5);
    }

    #[test]
    fn orthonormal_rows_annihilate() {
        let h = DenseMatrix::identity(3);
        let a = cycle_matrix(&h, 0.5).unwrap();
        assert!(a.cycle_matrix.as_slice().iter().all(|v| *v == 0.0));
        assert_eq!(a.spectral_norm, 0.0);
        assert!(a.stable);
    }

    #[test]
    fn product_order_matters() {
        let h = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.6, 0.8]]).unwrap();
        let mu = 0.2;
        let a = cycle_matrix(&h, mu).unwrap();
        let m1 = row_iteration_matrix(h.row(0), mu);
        let m2 = row_iteration_matrix(h.row(1), mu);
        let forward = m2.matmul(&m1).unwrap();
        let reversed = m1.matmul(&m2).unwrap();
        assert!(a.cycle_matrix.max_abs_diff(&forward).unwrap() < 1e-15);
        assert!(a.cycle_matrix.max_abs_diff(&reversed).unwrap() > 1e-3);
    }

    #[test]
    fn onset_on_zero_tail_and_short_trace() {
        let m = 4;
        let mut trace: Vec<f64> = (0..8).map(|i| 0.5f64.powi(i)).collect();
        trace.extend(std::iter::repeat(1e-16).take(12));
        assert_eq!(detect_periodic_onset(&trace, m, ONSET_REL_TOL).unwrap(), PeriodicOnset::At(8));
        assert!(matches!(
            detect_periodic_onset(&trace[..11], m, ONSET_REL_TOL),
            Err(AnalysisError::TraceTooShort { len: 11, cycle: 4 })
        ));
        let decaying: Vec<f64> = (0..30).map(|i| 0.9f64.powi(i)).collect();
        assert_eq!(detect_periodic_onset(&decaying, 5, ONSET_REL_TOL).unwrap(), PeriodicOnset::Never);
    }

    #[test]
    fn averaged_error_examples() {
        let x = [1.0, 2.0];
        let v = Vector::new(vec![1.5, 1.0]).unwrap();
        let e = averaged_error(&[v.clone(), v.clone(), v], &x).unwrap();
        assert_eq!(e.as_slice(), &[0.5, -1.0]);
        let plus = Vector::new(vec![1.25, 2.5]).unwrap();
        let minus = Vector::new(vec![0.75, 1.5]).unwrap();
        assert_eq!(averaged_error(&[plus, minus], &x).unwrap().as_slice(), &[0.0, 0.0]);
        assert!(averaged_error(&[], &x).is_err());
        assert!(averaged_error(&[Vector::new(vec![1.0]).unwrap()], &x).is_err());
    }

    #[test]
    fn replay_requires_truth() {
        let p = ProblemInstance::new(DenseMatrix::identity(2), Vector::new(vec![1.0, 1.0]).unwrap()).unwrap();
        assert!(matches!(
            replay_error_recursion(&p, &SolverConfig::new(0.1).with_iterations(4)),
            Err(AnalysisError::MissingGroundTruth)
        ));
    }
}
