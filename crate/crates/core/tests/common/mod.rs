//! Test-only oracles, independent of the library's own numerical paths.
#![allow(dead_code)]

use als_core::experiments::trial_rng;
use als_core::{DenseMatrix, ProblemInstance, Vector};
use rand::Rng;

/// Singular values by one-sided Jacobi rotations on the columns of `a`,
/// sorted descending.
pub fn jacobi_singular_values(a: &DenseMatrix) -> Vec<f64> {
    let (m, p) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<f64>> = (0..p).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for j in 0..p {
            for k in (j + 1)..p {
                let alpha: f64 = cols[j].iter().map(|v| v * v).sum();
                let beta: f64 = cols[k].iter().map(|v| v * v).sum();
                let gamma: f64 = cols[j].iter().zip(&cols[k]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 {
                    continue;
                }
                off = off.max(gamma.abs() / (alpha * beta).sqrt());
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (cols[j][i], cols[k][i]);
                    cols[j][i] = c * x - s * y;
                    cols[k][i] = s * x + c * y;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(a: &DenseMatrix, tol: f64) -> Vec<f64> {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    for _ in 0..200 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j))).map(|(i, j)| m[i][j] * m[i][j]).sum();
        if off.sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Central finite-difference gradient.
pub fn finite_difference_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], step: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[i] += step;
            minus[i] -= step;
            (f(&plus) - f(&minus)) / (2.0 * step)
        })
        .collect()
}

/// Gaussian-entry matrix drawn from a test stream (not the library's
/// uniform generator).
pub fn gaussian_matrix(m: usize, p: usize, seed: u64) -> DenseMatrix {
    let mut rng = trial_rng(seed, 1_000_000);
    DenseMatrix::from_fn(m, p, |_, _| {
        let u: f64 = rng.gen::<f64>();
        let v: f64 = rng.gen::<f64>();
        (-2.0 * (1.0 - u).ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    })
    .unwrap()
}

pub fn random_vector(len: usize, seed: u64) -> Vector {
    let mut rng = trial_rng(seed, 2_000_000);
    Vector::new((0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

/// `y = H x + n` with Gaussian `H`, uniform `x` and scaled uniform noise.
pub fn random_instance(m: usize, p: usize, noise_scale: f64, seed: u64) -> ProblemInstance {
    let h = gaussian_matrix(m, p, seed);
    let x = random_vector(p, seed ^ 0xabcdef);
    let n = random_vector(m, seed ^ 0x123456).scale(noise_scale);
    ProblemInstance::from_truth(h, x, n).unwrap()
}
