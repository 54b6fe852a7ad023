//! Least-squares estimators: the cyclic single-row iteration with window
//! averaging (ALS), full-gradient steepest descent (ILS), recursive
//! sequential least squares (SLS) and the batch solution.
//!
//! The ALS and ILS loops are instrumented with a [`MulCounter`] so that the
//! reported multiplication counts can be compared against
//! [`multiplication_count`] exactly.

use std::fmt;
use std::str::FromStr;

use crate::analysis::cycle_norm;
use crate::counter::MulCounter;
use crate::error::SolverError;
use crate::linalg::{
    batch_ls_solve_counted, dot_unchecked, format_f64, mat_t_vec, mat_vec, residual_cost, spectral_norm,
    DenseMatrix, ProblemInstance, Vector,
};

/// Reference step sizes are `1 / (2.05·max‖h_i‖²)` for ALS and
/// `1 / (2.05·s₁²)` for ILS, i.e. the bounds scaled by `2 / 2.05`.
pub const DEFAULT_STEP_DIVISOR: f64 = 2.05;

/// Initial inverse-information scale for SLS.
pub const DEFAULT_SLS_SCALE: f64 = 1e9;

/// ILS iteration count when none is configured.
pub const DEFAULT_ILS_ITERATIONS: usize = 1000;

/// Initial-condition decay targeted by [`default_iterations`].
pub const TRANSIENT_DECAY_TARGET: f64 = 1e-8;

/// Cycle cap used by [`default_iterations`].
pub const MAX_DEFAULT_CYCLES: usize = 5000;

/// Cycle count used when the cycle matrix is not a contraction.
pub const FALLBACK_CYCLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Als,
    Ils,
    Sls,
    Batch,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Als, Method::Ils, Method::Sls, Method::Batch];

    pub fn name(self) -> &'static str {
        match self {
            Method::Als => "als",
            Method::Ils => "ils",
            Method::Sls => "sls",
            Method::Batch => "batch",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "als" => Ok(Method::Als),
            "ils" => Ok(Method::Ils),
            "sls" => Ok(Method::Sls),
            "batch" | "ls" => Ok(Method::Batch),
            other => Err(format!("unknown method `{other}` (expected als, ils, sls or batch)")),
        }
    }
}

/// What to record while iterating.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceOptions {
    pub record: bool,
    /// Record every `stride`-th iteration; the last iteration is always kept.
    pub stride: usize,
    /// Keep full estimate snapshots, not only error norms.
    pub keep_estimates: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { record: false, stride: 1, keep_estimates: false }
    }
}

impl TraceOptions {
    pub fn every(stride: usize) -> Self {
        Self { record: true, stride: stride.max(1), keep_estimates: false }
    }

    pub fn full() -> Self {
        Self { record: true, stride: 1, keep_estimates: true }
    }

    fn wants(&self, k: usize, last: usize) -> bool {
        self.record && (k.is_multiple_of(self.stride) || k == last)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Step size; ignored by SLS and batch.
    pub mu: f64,
    /// `None` selects [`default_iterations`] (ALS) or [`DEFAULT_ILS_ITERATIONS`].
    pub iterations: Option<usize>,
    /// ALS averaging window; `None` means `m`.
    pub average_window: Option<usize>,
    pub sls_initial_scale: f64,
    pub trace: TraceOptions,
}

impl SolverConfig {
    pub fn new(mu: f64) -> Self {
        Self {
            mu,
            iterations: None,
            average_window: None,
            sls_initial_scale: DEFAULT_SLS_SCALE,
            trace: TraceOptions::default(),
        }
    }

    pub fn with_iterations(mut self, n: usize) -> Self {
        self.iterations = Some(n);
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.average_window = Some(window);
        self
    }

    pub fn with_trace(mut self, trace: TraceOptions) -> Self {
        self.trace = trace;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracePoint {
    pub k: usize,
    /// `‖x̂^(k) − x‖₂`, when the ground truth is known.
    pub error_norm: Option<f64>,
    pub residual_cost: f64,
    /// Multiplications spent up to and including iteration `k`.
    pub multiplications: u64,
    pub estimate: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverRun {
    pub method: Method,
    pub estimate: Vector,
    pub trace: Vec<TracePoint>,
    pub multiplications: u64,
    pub iterations: usize,
    /// Resolved step size (ALS and ILS).
    pub mu: Option<f64>,
    /// Resolved averaging window (ALS).
    pub average_window: Option<usize>,
}

impl SolverRun {
    pub const CSV_HEADER: &'static str = "k,error_norm,residual_cost,cumulative_multiplications";

    /// CSV trace with a mandatory header row. `error_norm` is left empty
    /// when the ground truth is unknown.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for point in &self.trace {
            out.push_str(&format!(
                "{},{},{},{}\n",
                point.k,
                point.error_norm.map(format_f64).unwrap_or_default(),
                format_f64(point.residual_cost),
                point.multiplications
            ));
        }
        out
    }
}

fn trace_point(problem: &ProblemInstance, k: usize, x: &[f64], mults: u64, opts: &TraceOptions) -> TracePoint {
    TracePoint {
        k,
        error_norm: problem.error_norm(x),
        residual_cost: residual_cost(problem, x).unwrap_or(f64::NAN),
        multiplications: mults,
        estimate: opts.keep_estimates.then(|| Vector::from_vec_unchecked(x.to_vec())),
    }
}

/// Cyclic row selector: `((i − 1) mod m) + 1`, one-based.
pub fn cyclic_index(i: usize, m: usize) -> usize {
    assert!(i >= 1 && m >= 1, "cyclic_index needs i >= 1 and m >= 1");
    (i - 1) % m + 1
}

/// One ALS update `x + 2μ·h·(y − hᵀx)` with `2μ` already formed.
/// Costs exactly `2p + 1` multiplications.
#[inline]
fn als_update(x: &mut [f64], h: &[f64], y: f64, two_mu: f64, counter: &mut MulCounter) {
    let residual = y - dot_unchecked(h, x);
    let gain = two_mu * residual;
    for (xi, hi) in x.iter_mut().zip(h) {
        *xi += gain * hi;
    }
    counter.add(2 * h.len() as u64 + 1);
}

pub fn als_step(x_prev: &[f64], h_row: &[f64], y_i: f64, mu: f64) -> Result<Vector, SolverError> {
    if x_prev.len() != h_row.len() {
        return Err(crate::error::LinalgError::DimensionMismatch { expected: x_prev.len(), found: h_row.len() }.into());
    }
    let mut x = x_prev.to_vec();
    als_update(&mut x, h_row, y_i, 2.0 * mu, &mut MulCounter::default());
    Ok(Vector::from_vec_unchecked(x))
}

fn check_mu(mu: f64) -> Result<(), SolverError> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(SolverError::InvalidStepSize(mu))
    }
}

/// Smallest multiple of `m` whose cycle count `c` leaves one further cycle
/// after the initial-condition error has decayed by [`TRANSIENT_DECAY_TARGET`]
/// (measured by `‖M‖₂^c`), capped at [`MAX_DEFAULT_CYCLES`] cycles. If
/// `‖M‖₂ ≥ 1 − 1e-12` the fallback is [`FALLBACK_CYCLES`] cycles.
pub fn default_iterations(h: &DenseMatrix, mu: f64) -> Result<usize, SolverError> {
    check_mu(mu)?;
    let norm = cycle_norm(h, mu)?;
    Ok(h.rows() * default_cycles(norm))
}

pub(crate) fn default_cycles(norm: f64) -> usize {
    if norm >= 1.0 - 1e-12 {
        return FALLBACK_CYCLES;
    }
    if norm <= 0.0 {
        return 2;
    }
    let estimate = (TRANSIENT_DECAY_TARGET.ln() / norm.ln()).ceil().max(1.0);
    if estimate >= MAX_DEFAULT_CYCLES as f64 {
        return MAX_DEFAULT_CYCLES;
    }
    let mut c = estimate as usize;
    while c > 1 && norm.powi(c as i32 - 1) <= TRANSIENT_DECAY_TARGET {
        c -= 1;
    }
    while norm.powi(c as i32) > TRANSIENT_DECAY_TARGET {
        c += 1;
    }
    (c + 1).min(MAX_DEFAULT_CYCLES)
}

/// Runs the cyclic single-row iteration for `N` steps from `x̂^(0) = 0`
/// and returns the mean of the last `average_window` iterates.
pub fn als_solve(problem: &ProblemInstance, config: &SolverConfig) -> Result<SolverRun, SolverError> {
    check_mu(config.mu)?;
    let (m, p) = (problem.rows(), problem.cols());
    let n_iter = match config.iterations {
        Some(n) => n,
        None => default_iterations(&problem.h, config.mu)?,
    };
    let window = config.average_window.unwrap_or(m);
    if window == 0 || n_iter < window {
        return Err(SolverError::InvalidConfig(format!(
            "need iterations ({n_iter}) >= average_window ({window}) >= 1"
        )));
    }

    let two_mu = 2.0 * config.mu;
    let mut counter = MulCounter::default();
    let mut x = vec![0.0; p];
    let mut sum = vec![0.0; p];
    let mut trace = Vec::new();
    let window_start = n_iter - window;

    for k in 1..=n_iter {
        let row = cyclic_index(k, m) - 1;
        als_update(&mut x, problem.h.row(row), problem.y[row], two_mu, &mut counter);
        if !x.iter().all(|v| v.is_finite()) {
            return Err(SolverError::Divergence { iteration: k });
        }
        if k > window_start {
            sum.iter_mut().zip(&x).for_each(|(s, v)| *s += v);
        }
        if config.trace.wants(k, n_iter) {
            trace.push(trace_point(problem, k, &x, counter.get(), &config.trace));
        }
    }

    let scale = 1.0 / window as f64;
    sum.iter_mut().for_each(|s| *s *= scale);
    counter.add(p as u64);

    Ok(SolverRun {
        method: Method::Als,
        estimate: Vector::from_vec_unchecked(sum),
        trace,
        multiplications: counter.get(),
        iterations: n_iter,
        mu: Some(config.mu),
        average_window: Some(window),
    })
}

/// Gradient of the least-squares cost, `−2Hᵀ(y − Hx̂)`.
pub fn ls_gradient(problem: &ProblemInstance, x_hat: &[f64]) -> Result<Vector, SolverError> {
    let hx = mat_vec(&problem.h, x_hat)?;
    let residual: Vec<f64> = problem.y.iter().zip(hx.iter()).map(|(y, f)| y - f).collect();
    Ok(mat_t_vec(&problem.h, &residual)?.scale(-2.0))
}

/// Steepest descent on the full cost. Each iteration sums the `m` partial
/// gradients row by row and costs `2pm + p` multiplications.
pub fn ils_solve(problem: &ProblemInstance, config: &SolverConfig) -> Result<SolverRun, SolverError> {
    check_mu(config.mu)?;
    let p = problem.cols();
    let n_iter = config.iterations.unwrap_or(DEFAULT_ILS_ITERATIONS);
    let two_mu = 2.0 * config.mu;
    let mut counter = MulCounter::default();
    let mut x = vec![0.0; p];
    let mut direction = vec![0.0; p];
    let mut trace = Vec::new();

    for k in 1..=n_iter {
        direction.iter_mut().for_each(|d| *d = 0.0);
        for (h, y) in problem.h.row_iter().zip(problem.y.iter()) {
            let residual = y - dot_unchecked(h, &x);
            for (d, hi) in direction.iter_mut().zip(h) {
                *d += residual * hi;
            }
            counter.add(2 * p as u64);
        }
        for (xi, d) in x.iter_mut().zip(&direction) {
            *xi += two_mu * d;
        }
        counter.add(p as u64);
        if !x.iter().all(|v| v.is_finite()) {
            return Err(SolverError::Divergence { iteration: k });
        }
        if config.trace.wants(k, n_iter) {
            trace.push(trace_point(problem, k, &x, counter.get(), &config.trace));
        }
    }

    Ok(SolverRun {
        method: Method::Ils,
        estimate: Vector::from_vec_unchecked(x),
        trace,
        multiplications: counter.get(),
        iterations: n_iter,
        mu: Some(config.mu),
        average_window: None,
    })
}

/// Recursive least-squares state.
#[derive(Clone, Debug, PartialEq)]
pub struct SlsState {
    pub estimate: Vector,
    pub gain: Vector,
    /// Running surrogate for `(HᵀH)⁻¹`.
    pub inverse_information: DenseMatrix,
}

impl SlsState {
    pub fn new(p: usize, initial_scale: f64) -> Self {
        Self {
            estimate: Vector::zeros(p),
            gain: Vector::zeros(p),
            inverse_information: DenseMatrix::diagonal(&vec![initial_scale; p]),
        }
    }

    /// Absorbs one measurement `y = hᵀx + n`.
    pub fn update(&mut self, h: &[f64], y: f64, counter: &mut MulCounter) {
        let p = h.len();
        let pm = &self.inverse_information;
        let ph: Vec<f64> = pm.row_iter().map(|row| dot_unchecked(row, h)).collect();
        counter.add((p * p) as u64);
        let denom = 1.0 + dot_unchecked(h, &ph);
        counter.add(p as u64);
        let inv = 1.0 / denom;
        counter.add(1);
        let gain: Vec<f64> = ph.iter().map(|v| v * inv).collect();
        counter.add(p as u64);

        let residual = y - dot_unchecked(h, &self.estimate);
        counter.add(p as u64);
        for (x, k) in self.estimate.as_mut_slice().iter_mut().zip(&gain) {
            *x += k * residual;
        }
        counter.add(p as u64);

        let mut next = self.inverse_information.clone();
        for a in 0..p {
            for b in 0..p {
                next.set(a, b, pm[(a, b)] - gain[a] * ph[b]);
            }
        }
        counter.add((p * p) as u64);
        for a in 0..p {
            for b in (a + 1)..p {
                let v = 0.5 * (next[(a, b)] + next[(b, a)]);
                next.set(a, b, v);
                next.set(b, a, v);
            }
        }
        counter.add((p * (p - 1) / 2) as u64);

        self.inverse_information = next;
        self.gain = Vector::from_vec_unchecked(gain);
    }
}

pub fn sls_solve(problem: &ProblemInstance, initial_scale: f64) -> Result<SolverRun, SolverError> {
    sls_solve_traced(problem, initial_scale, &TraceOptions::default())
}

/// SLS over the `m` rows in order, one update per row.
pub fn sls_solve_traced(
    problem: &ProblemInstance,
    initial_scale: f64,
    trace_opts: &TraceOptions,
) -> Result<SolverRun, SolverError> {
    if !(initial_scale > 0.0 && initial_scale.is_finite()) {
        return Err(SolverError::InvalidConfig(format!("initial_scale must be positive, got {initial_scale}")));
    }
    let m = problem.rows();
    let mut state = SlsState::new(problem.cols(), initial_scale);
    let mut counter = MulCounter::default();
    let mut trace = Vec::new();
    for k in 1..=m {
        state.update(problem.h.row(k - 1), problem.y[k - 1], &mut counter);
        if !state.estimate.is_finite() {
            return Err(SolverError::Divergence { iteration: k });
        }
        if trace_opts.wants(k, m) {
            trace.push(trace_point(problem, k, &state.estimate, counter.get(), trace_opts));
        }
    }
    Ok(SolverRun {
        method: Method::Sls,
        estimate: state.estimate,
        trace,
        multiplications: counter.get(),
        iterations: m,
        mu: None,
        average_window: None,
    })
}

pub fn batch_solve(problem: &ProblemInstance) -> Result<SolverRun, SolverError> {
    let mut counter = MulCounter::default();
    let estimate = batch_ls_solve_counted(problem, &mut counter)?;
    Ok(SolverRun {
        method: Method::Batch,
        estimate,
        trace: Vec::new(),
        multiplications: counter.get(),
        iterations: 1,
        mu: None,
        average_window: None,
    })
}

/// Dispatches to the solver for `method`.
pub fn solve(problem: &ProblemInstance, method: Method, config: &SolverConfig) -> Result<SolverRun, SolverError> {
    match method {
        Method::Als => als_solve(problem, config),
        Method::Ils => ils_solve(problem, config),
        Method::Sls => sls_solve_traced(problem, config.sls_initial_scale, &config.trace),
        Method::Batch => batch_solve(problem),
    }
}

/// Exclusive upper bound `1 / (2·maxᵢ ‖hᵢ‖₂²)` on the ALS step size.
pub fn max_step_size_als(h: &DenseMatrix) -> Result<f64, SolverError> {
    let mut largest = 0.0f64;
    for (row, values) in h.row_iter().enumerate() {
        let sq = dot_unchecked(values, values);
        if sq == 0.0 {
            return Err(SolverError::DegenerateRow { row });
        }
        largest = largest.max(sq);
    }
    Ok(1.0 / (2.0 * largest))
}

/// Exclusive upper bound `1 / (2·s₁(H)²)` on the ILS step size.
pub fn max_step_size_ils(h: &DenseMatrix) -> Result<f64, SolverError> {
    let s1 = spectral_norm(h)?;
    Ok(1.0 / (2.0 * s1 * s1))
}

/// Step size selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepPolicy {
    Explicit(f64),
    /// `1 / (d·max‖h_i‖²)` for ALS and `1 / (d·s₁²)` for ILS; any `d > 2`
    /// stays inside the bound.
    Divisor(f64),
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy::Divisor(DEFAULT_STEP_DIVISOR)
    }
}

impl StepPolicy {
    /// Resolves the step for ALS or ILS; SLS and batch have no step and get 0.
    pub fn resolve(self, method: Method, h: &DenseMatrix) -> Result<f64, SolverError> {
        match self {
            StepPolicy::Explicit(mu) => check_mu(mu).map(|_| mu),
            StepPolicy::Divisor(d) => match method {
                Method::Als => Ok(2.0 * max_step_size_als(h)? / d),
                Method::Ils => Ok(2.0 * max_step_size_ils(h)? / d),
                Method::Sls | Method::Batch => Ok(0.0),
            },
        }
    }
}

/// Closed-form multiplication counts; `None` where only instrumentation
/// applies (SLS, batch).
pub fn multiplication_count(method: Method, m: usize, p: usize, iterations: usize) -> Option<u64> {
    let (m, p, n) = (m as u64, p as u64, iterations as u64);
    match method {
        Method::Als => Some((2 * p + 1) * n + p),
        Method::Ils => Some((2 * p * m + p) * n),
        Method::Sls | Method::Batch => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(rows: &[Vec<f64>], y: &[f64]) -> ProblemInstance {
        ProblemInstance::new(DenseMatrix::from_rows(rows).unwrap(), Vector::new(y.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_index_examples() {
        assert_eq!(cyclic_index(1, 100), 1);
        assert_eq!(cyclic_index(100, 100), 100);
        assert_eq!(cyclic_index(101, 100), 1);
        assert_eq!(cyclic_index(7, 1), 1);
    }

    #[test]
    fn als_step_examples() {
        assert_eq!(als_step(&[0.0, 0.0], &[1.0, 0.0], 0.0, 0.3).unwrap().as_slice(), &[0.0, 0.0]);
        assert_eq!(als_step(&[0.0, 0.0], &[1.0, 0.0], 1.0, 0.25).unwrap().as_slice(), &[0.5, 0.0]);
        assert!(als_step(&[0.0], &[1.0, 0.0], 1.0, 0.25).is_err());

        let mut x = 0.0;
        for _ in 0..60 {
            x = als_step(&[x], &[1.0], 2.0, 0.25).unwrap()[0];
        }
        assert!((x - 2.0).abs() < 1e-15);
    }

    #[test]
    fn als_identity_converges() {
        let p = 4;
        let y = [0.3, -1.2, 2.5, 0.01];
        let rows: Vec<Vec<f64>> = (0..p).map(|i| (0..p).map(|j| f64::from(u8::from(i == j))).collect()).collect();
        let run = als_solve(&problem(&rows, &y), &SolverConfig::new(0.4).with_iterations(50 * p)).unwrap();
        for (a, b) in run.estimate.iter().zip(&y) {
            assert!((a - b).abs() < 1e-6);
        }
        assert_eq!(run.multiplications, multiplication_count(Method::Als, p, p, 50 * p).unwrap());
    }

    #[test]
    fn als_rejects_bad_config() {
        let pr = problem(&[vec![1.0], vec![2.0]], &[1.0, 2.0]);
        assert!(matches!(als_solve(&pr, &SolverConfig::new(0.0)), Err(SolverError::InvalidStepSize(_))));
        assert!(matches!(
            als_solve(&pr, &SolverConfig::new(0.1).with_iterations(1)),
            Err(SolverError::InvalidConfig(_))
        ));
        assert!(matches!(
            als_solve(&pr, &SolverConfig::new(0.1).with_iterations(4).with_window(0)),
            Err(SolverError::InvalidConfig(_))
        ));
    }

    #[test]
    fn als_divergence_names_iteration() {
        let pr = problem(&[vec![3.0, 4.0], vec![1.0, -2.0]], &[1.0, 2.0]);
        match als_solve(&pr, &SolverConfig::new(10.0).with_iterations(10_000)) {
            Err(SolverError::Divergence { iteration }) => assert!(iteration > 1 && iteration < 10_000),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn ils_identity_converges() {
        let y = [1.0, -3.0, 0.5];
        let rows = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let run = ils_solve(&problem(&rows, &y), &SolverConfig::new(0.25).with_iterations(100)).unwrap();
        for (a, b) in run.estimate.iter().zip(&y) {
            assert!((a - b).abs() < 1e-6);
        }
        assert_eq!(run.multiplications, (2 * 3 * 3 + 3) * 100);
    }

    #[test]
    fn sls_scalar_closed_form() {
        let c = 3.5;
        for scale in [0.5, 1.0, 1e3] {
            let run = sls_solve(&problem(&[vec![1.0]], &[c]), scale).unwrap();
            assert!((run.estimate[0] - c * scale / (1.0 + scale)).abs() < 1e-12);
        }
        assert!(sls_solve(&problem(&[vec![1.0]], &[c]), 0.0).is_err());
    }

    #[test]
    fn step_size_bounds() {
        let unit = DenseMatrix::from_rows(&[vec![0.6, 0.8], vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert!((max_step_size_als(&unit).unwrap() - 0.5).abs() < 1e-15);
        let single = DenseMatrix::from_rows(&[vec![3.0, 4.0]]).unwrap();
        assert_eq!(max_step_size_als(&single).unwrap(), 1.0 / 50.0);
        let zero_row = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(max_step_size_als(&zero_row), Err(SolverError::DegenerateRow { row: 1 })));

        assert!((max_step_size_ils(&DenseMatrix::identity(3)).unwrap() - 0.5).abs() < 1e-12);
        assert!((max_step_size_ils(&DenseMatrix::diagonal(&[2.0, 1.0])).unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(multiplication_count(Method::Als, 100, 8, 1), Some(17 + 8));
        assert_eq!(multiplication_count(Method::Ils, 100, 8, 1), Some(1608));
        assert_eq!(multiplication_count(Method::Sls, 100, 8, 1), None);
        assert_eq!(multiplication_count(Method::Batch, 100, 8, 1), None);
        // Per-iteration ratio approaches m as p grows.
        let (m, p) = (100u64, 1000u64);
        let ratio = (2 * p * m + p) as f64 / (2 * p + 1) as f64;
        assert!((ratio / m as f64 - 1.0).abs() < 0.01);
    }

    #[test]
    fn default_cycles_policy() {
        assert_eq!(default_cycles(1.0), FALLBACK_CYCLES);
        assert_eq!(default_cycles(0.0), 2);
        assert_eq!(default_cycles(1e-9), 2);
        // 0.1^8 = 1e-8 up to rounding.
        let c = default_cycles(0.1);
        assert!(0.1f64.powi(c as i32 - 1) <= TRANSIENT_DECAY_TARGET);
        assert!(0.1f64.powi(c as i32 - 2) > TRANSIENT_DECAY_TARGET);
        assert_eq!(default_cycles(1.0 - 1e-9), MAX_DEFAULT_CYCLES);
    }

    #[test]
    fn method_parsing() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("qr".parse::<Method>().is_err());
    }

    #[test]
    fn trace_stride_and_csv() {
        let pr = problem(&[vec![1.0], vec![2.0], vec![0.5]], &[1.0, 2.0, 0.5]).with_truth(Vector::new(vec![1.0]).unwrap()).unwrap();
        let run = als_solve(&pr, &SolverConfig::new(0.05).with_iterations(10).with_trace(TraceOptions::every(4))).unwrap();
        let ks: Vec<usize> = run.trace.iter().map(|t| t.k).collect();
        assert_eq!(ks, vec![4, 8, 10]);
        assert_eq!(run.trace[0].multiplications, 12);
        let csv = run.trace_csv();
        assert!(csv.starts_with("k,error_norm,residual_cost,cumulative_multiplications\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
