//! Dense linear-algebra substrate.
//!
//! Everything here is deliberately small: row-major matrices, plain vectors,
//! fixed left-to-right accumulation, power iteration for the largest singular
//! value, and a normal-equation batch least-squares solve that the iterative
//! solvers are checked against.

use std::fmt;
use std::ops::{Deref, Index};

use crate::counter::MulCounter;
use crate::error::LinalgError;

/// Relative pivot threshold below which the normal-equation factorization
/// reports rank deficiency.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Default relative tolerance for [`largest_singular_value`].
pub const SVD_TOLERANCE: f64 = 1e-10;

/// Default iteration cap for [`largest_singular_value`].
pub const SVD_MAX_ITER: usize = 10_000;

/// A finite, non-empty real vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(elements: Vec<f64>) -> Result<Self, LinalgError> {
        if elements.is_empty() {
            return Err(LinalgError::Empty);
        }
        if let Some(index) = elements.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self(elements))
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "vector length must be at least 1");
        Self(vec![0.0; len])
    }

    /// Wraps values produced internally; only checked in debug builds.
    pub(crate) fn from_vec_unchecked(elements: Vec<f64>) -> Self {
        debug_assert!(!elements.is_empty());
        Self(elements)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector, LinalgError> {
        check_len(self.len(), other.len())?;
        Ok(Self(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector, LinalgError> {
        check_len(self.len(), other.len())?;
        Ok(Self(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Self(self.iter().map(|v| v * factor).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = LinalgError;

    fn try_from(value: Vec<f64>) -> Result<Self, Self::Error> {
        Vector::new(value)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            check_len(cols, row.len())?;
            data.extend_from_slice(row);
        }
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_row_major(rows, cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::from_vec_unchecked(self.row(i).to_vec())
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        check_len(self.cols, other.rows)?;
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0.0;
                for k in 0..self.cols {
                    acc += self[(i, k)] * other[(k, j)];
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64, LinalgError> {
        check_len(self.data.len(), other.data.len())?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs())))
    }

    /// `AᵀA`, accumulated left to right over rows.
    pub fn gram(&self) -> DenseMatrix {
        let p = self.cols;
        let mut g = DenseMatrix::zeros(p, p);
        for row in self.row_iter() {
            for a in 0..p {
                for b in 0..p {
                    g.data[a * p + b] += row[a] * row[b];
                }
            }
        }
        g
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    /// Writes the fixture text format: `m p` header, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|v| format_f64(*v)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Formats a double with 17 significant digits, enough to round-trip.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn check_len(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected != found {
        return Err(LinalgError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// An observation model `y = H x + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    pub h: DenseMatrix,
    pub y: Vector,
    pub x_true: Option<Vector>,
    pub noise: Option<Vector>,
}

impl ProblemInstance {
    pub fn new(h: DenseMatrix, y: Vector) -> Result<Self, LinalgError> {
        check_len(h.rows(), y.len())?;
        if h.rows() < h.cols() {
            return Err(LinalgError::Underdetermined { rows: h.rows(), cols: h.cols() });
        }
        Ok(Self { h, y, x_true: None, noise: None })
    }

    /// Assembles `y = H·x_true + noise`.
    pub fn from_truth(h: DenseMatrix, x_true: Vector, noise: Vector) -> Result<Self, LinalgError> {
        check_len(h.rows(), noise.len())?;
        let clean = mat_vec(&h, &x_true)?;
        let y = clean.add(&noise)?;
        let mut problem = Self::new(h, y)?;
        problem.x_true = Some(x_true);
        problem.noise = Some(noise);
        Ok(problem)
    }

    pub fn with_truth(mut self, x_true: Vector) -> Result<Self, LinalgError> {
        check_len(self.h.cols(), x_true.len())?;
        self.x_true = Some(x_true);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.h.rows()
    }

    pub fn cols(&self) -> usize {
        self.h.cols()
    }

    /// Re-checks `y == H·x_true + noise` bit for bit, when both are present.
    pub fn is_consistent(&self) -> bool {
        match (&self.x_true, &self.noise) {
            (Some(x), Some(n)) => match mat_vec(&self.h, x) {
                Ok(hx) => hx.iter().zip(n.iter()).zip(self.y.iter()).all(|((a, b), y)| a + b == *y),
                Err(_) => false,
            },
            _ => true,
        }
    }

    /// Fails with [`LinalgError::RankDeficient`] when `H` lacks full column rank.
    pub fn check_full_rank(&self) -> Result<(), LinalgError> {
        cholesky(&self.h.gram(), &mut MulCounter::default()).map(|_| ())
    }

    pub fn error_norm(&self, estimate: &[f64]) -> Option<f64> {
        self.x_true
            .as_ref()
            .map(|x| x.iter().zip(estimate).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt())
    }
}

pub fn dot(u: &[f64], v: &[f64]) -> Result<f64, LinalgError> {
    check_len(u.len(), v.len())?;
    Ok(dot_unchecked(u, v))
}

#[inline]
pub(crate) fn dot_unchecked(u: &[f64], v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in u.iter().zip(v) {
        acc += a * b;
    }
    acc
}

pub fn two_norm(v: &[f64]) -> f64 {
    dot_unchecked(v, v).sqrt()
}

pub fn mat_vec(a: &DenseMatrix, v: &[f64]) -> Result<Vector, LinalgError> {
    check_len(a.cols(), v.len())?;
    Ok(Vector::from_vec_unchecked(a.row_iter().map(|row| dot_unchecked(row, v)).collect()))
}

/// `Aᵀ·v`.
pub fn mat_t_vec(a: &DenseMatrix, v: &[f64]) -> Result<Vector, LinalgError> {
    check_len(a.rows(), v.len())?;
    let mut out = vec![0.0; a.cols()];
    for (row, s) in a.row_iter().zip(v) {
        for (o, h) in out.iter_mut().zip(row) {
            *o += h * s;
        }
    }
    Ok(Vector::from_vec_unchecked(out))
}

/// Largest singular value by power iteration on `AᵀA`, started from the
/// normalized all-ones vector.
///
/// On non-convergence the last estimate is carried in the error.
pub fn largest_singular_value(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<f64, LinalgError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let scale = a.as_slice().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    // Work on A / max|a_ij| so AᵀA cannot underflow for tiny cycle matrices.
    let a = &DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] / scale)?;
    let p = a.cols();
    let mut v = vec![1.0 / (p as f64).sqrt(); p];
    let mut estimate = 0.0;
    for iteration in 0..max_iter {
        let av = mat_vec(a, &v)?;
        let w = mat_t_vec(a, &av)?;
        let norm = two_norm(&w);
        if norm == 0.0 {
            // The all-ones start lies in the null space of A.
            return Err(LinalgError::NoConvergence { estimate: estimate * scale, iterations: iteration });
        }
        // Rayleigh quotient vᵀAᵀAv = ‖Av‖² for unit v.
        let next = two_norm(&av);
        v.iter_mut().zip(w.iter()).for_each(|(vi, wi)| *vi = wi / norm);
        if (next - estimate).abs() <= tol * next {
            // One more step of Av at the converged direction.
            return Ok(two_norm(&mat_vec(a, &v)?).max(next) * scale);
        }
        estimate = next;
    }
    Err(LinalgError::NoConvergence { estimate: estimate * scale, iterations: max_iter })
}

/// `largest_singular_value` with the default tolerance and iteration cap.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64, LinalgError> {
    largest_singular_value(a, SVD_TOLERANCE, SVD_MAX_ITER)
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
fn cholesky(a: &DenseMatrix, counter: &mut MulCounter) -> Result<DenseMatrix, LinalgError> {
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    let mut largest = 0.0f64;
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        counter.add(j as u64);
        largest = largest.max(a[(j, j)].abs());
        if d.is_nan() || d <= RANK_TOLERANCE * largest {
            return Err(LinalgError::RankDeficient { column: j, pivot: d, largest });
        }
        let djj = d.sqrt();
        l.set(j, j, djj);
        let inv = 1.0 / djj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l.set(i, j, s * inv);
            counter.add(j as u64 + 1);
        }
    }
    Ok(l)
}

/// Solves `L Lᵀ x = b` for a lower-triangular `l`.
fn cholesky_solve(l: &DenseMatrix, b: &[f64], counter: &mut MulCounter) -> Vec<f64> {
    let n = l.rows();
    let mut z = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * z[k];
        }
        z[i] = s / l[(i, i)];
        counter.add(i as u64 + 1);
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
        counter.add((n - i) as u64);
    }
    x
}

/// Batch least-squares estimate via the normal equations `HᵀH x = Hᵀy`.
pub fn batch_ls_solve(problem: &ProblemInstance) -> Result<Vector, LinalgError> {
    batch_ls_solve_counted(problem, &mut MulCounter::default())
}

/// Same as [`batch_ls_solve`], counting multiplications and divisions.
pub fn batch_ls_solve_counted(problem: &ProblemInstance, counter: &mut MulCounter) -> Result<Vector, LinalgError> {
    let (m, p) = (problem.rows() as u64, problem.cols() as u64);
    let gram = problem.h.gram();
    counter.add(m * p * p);
    let rhs = mat_t_vec(&problem.h, &problem.y)?;
    counter.add(m * p);
    let l = cholesky(&gram, counter)?;
    Ok(Vector::from_vec_unchecked(cholesky_solve(&l, &rhs, counter)))
}

/// `J(x̂) = (y − Hx̂)ᵀ(y − Hx̂)`.
pub fn residual_cost(problem: &ProblemInstance, x_hat: &[f64]) -> Result<f64, LinalgError> {
    let hx = mat_vec(&problem.h, x_hat)?;
    let mut acc = 0.0;
    for (y, f) in problem.y.iter().zip(hx.iter()) {
        let r = y - f;
        acc += r * r;
    }
    Ok(acc)
}

/// Parses the fixture text format: a `m p` header followed by `m` lines of
/// `p` whitespace-separated decimals. Blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix, LinalgError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| LinalgError::Parse {
        line: 1,
        column: 1,
        message: "missing `m p` header".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(LinalgError::Parse {
            line: header_line,
            column: 1,
            message: format!("header must hold two counts, found {}", dims.len()),
        });
    }
    let parse_count = |s: &str, column: usize| {
        s.parse::<usize>().map_err(|e| LinalgError::Parse {
            line: header_line,
            column,
            message: format!("invalid count `{s}`: {e}"),
        })
    };
    let rows = parse_count(dims[0], 1)?;
    let cols = parse_count(dims[1], 2)?;
    if rows == 0 || cols == 0 {
        return Err(LinalgError::Parse {
            line: header_line,
            column: 1,
            message: "dimensions must be positive".into(),
        });
    }

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line_no, line) in lines {
        if seen == rows {
            return Err(LinalgError::Parse {
                line: line_no,
                column: 1,
                message: format!("expected {rows} rows, found more"),
            });
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != cols {
            return Err(LinalgError::Parse {
                line: line_no,
                column: fields.len().min(cols) + 1,
                message: format!("expected {cols} values, found {}", fields.len()),
            });
        }
        for (c, field) in fields.iter().enumerate() {
            let v: f64 = field.parse().map_err(|e| LinalgError::Parse {
                line: line_no,
                column: c + 1,
                message: format!("invalid number `{field}`: {e}"),
            })?;
            if !v.is_finite() {
                return Err(LinalgError::Parse {
                    line: line_no,
                    column: c + 1,
                    message: format!("non-finite value `{field}`"),
                });
            }
            data.push(v);
        }
        seen += 1;
    }
    if seen != rows {
        return Err(LinalgError::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("expected {rows} rows, found {seen}"),
        });
    }
    DenseMatrix::from_row_major(rows, cols, data)
}

/// Parses a vector stored as an `m 1` matrix (an `1 m` row is also accepted).
pub fn parse_vector(text: &str) -> Result<Vector, LinalgError> {
    let m = parse_matrix(text)?;
    Ok(Vector::from_vec_unchecked(m.data))
}

/// Writes a vector as an `m 1` matrix in the fixture text format.
pub fn format_vector(v: &[f64]) -> String {
    let mut out = format!("{} 1\n", v.len());
    for x in v {
        out.push_str(&format_f64(*x));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn mat_vec_examples() {
        assert_eq!(mat_vec(&DenseMatrix::identity(3), &[1.0, 2.0, 3.0]).unwrap(), v(&[1.0, 2.0, 3.0]));
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(mat_vec(&a, &[1.0, 1.0]).unwrap(), v(&[3.0, 7.0]));
        assert_eq!(mat_vec(&DenseMatrix::zeros(2, 2), &[5.0, 5.0]).unwrap(), v(&[0.0, 0.0]));
        assert!(matches!(
            mat_vec(&a, &[1.0]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn dot_and_norm_examples() {
        assert_eq!(dot(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(dot(&[3.0, 4.0], &[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(dot(&[-2.5], &[1.0]).unwrap(), -2.5);
        assert!(dot(&[1.0], &[1.0, 2.0]).is_err());
        assert_eq!(two_norm(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(two_norm(&[3.0, 4.0]), 5.0);
        assert_eq!(two_norm(&[-7.0]), 7.0);
    }

    #[test]
    fn vector_rejects_non_finite_and_empty() {
        assert!(matches!(Vector::new(vec![]), Err(LinalgError::Empty)));
        assert!(matches!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(LinalgError::NonFinite { index: 1 })
        ));
        assert!(DenseMatrix::from_row_major(1, 2, vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn singular_value_of_simple_matrices() {
        let s = spectral_norm(&DenseMatrix::identity(3)).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        let s = spectral_norm(&DenseMatrix::diagonal(&[5.0, 2.0, 1.0])).unwrap();
        assert!((s - 5.0).abs() < 1e-9);
        assert_eq!(spectral_norm(&DenseMatrix::zeros(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn singular_value_reports_non_convergence() {
        // Two equal singular values with the start vector split evenly still
        // converge; a tiny iteration budget cannot.
        let a = DenseMatrix::diagonal(&[1.0, 0.999_999, 0.5]);
        match largest_singular_value(&a, 1e-15, 2) {
            Err(LinalgError::NoConvergence { estimate, iterations }) => {
                assert_eq!(iterations, 2);
                assert!(estimate > 0.5 && estimate <= 1.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn batch_ls_examples() {
        let y = v(&[1.5, -2.0, 0.25]);
        let p = ProblemInstance::new(DenseMatrix::identity(3), y.clone()).unwrap();
        let x = batch_ls_solve(&p).unwrap();
        for (a, b) in x.iter().zip(y.iter()) {
            assert!((a - b).abs() < 1e-15);
        }

        let p = ProblemInstance::new(DenseMatrix::from_rows(&[vec![1.0], vec![1.0]]).unwrap(), v(&[1.0, 3.0])).unwrap();
        assert!((batch_ls_solve(&p).unwrap()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn batch_ls_rank_error() {
        let h = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]]).unwrap();
        let p = ProblemInstance::new(h, v(&[1.0, 2.0, 3.0])).unwrap();
        assert!(matches!(batch_ls_solve(&p), Err(LinalgError::RankDeficient { column: 1, .. })));
        assert!(p.check_full_rank().is_err());
    }

    #[test]
    fn residual_cost_examples() {
        let p = ProblemInstance::new(DenseMatrix::identity(2), v(&[1.0, 1.0])).unwrap();
        assert_eq!(residual_cost(&p, &[0.0, 0.0]).unwrap(), 2.0);
        assert_eq!(residual_cost(&p, &[1.0, 1.0]).unwrap(), 0.0);
        assert!(residual_cost(&p, &[1.0]).is_err());
    }

    #[test]
    fn from_truth_is_consistent() {
        let h = DenseMatrix::from_rows(&[vec![0.1, 0.7], vec![0.3, 0.2], vec![0.9, 0.4]]).unwrap();
        let p = ProblemInstance::from_truth(h, v(&[0.3, 0.6]), v(&[1e-3, -2e-3, 5e-4])).unwrap();
        assert!(p.is_consistent());
        let mut tampered = p.clone();
        tampered.y = v(&[0.0, 0.0, 0.0]);
        assert!(!tampered.is_consistent());
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let a = DenseMatrix::from_rows(&[vec![0.1, -2.0], vec![1e-300, 3.0]]).unwrap();
        assert_eq!(parse_matrix(&a.to_string()).unwrap(), a);

        let x = [0.1, 1.0 / 3.0];
        assert_eq!(parse_vector(&format_vector(&x)).unwrap().as_slice(), &x);

        match parse_matrix("2 2\n1 2\n3 x\n") {
            Err(LinalgError::Parse { line: 3, column: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix("2 2\n1 2\n3\n") {
            Err(LinalgError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2 2\n1 2\n").is_err());
        assert!(parse_matrix("1 1\nnan\n").is_err());
    }
}
