//! Scenario generators and Monte-Carlo drivers.
//!
//! Randomness comes from ChaCha8 streams: every trial owns the stream
//! `(seed, trial_index)`, so results do not depend on scheduling order.
//! Uniform draws use `rand`'s `[0, 1)` double conversion; Gaussian draws use
//! the Box–Muller cosine branch `sqrt(−2 ln(1 − u₁))·cos(2π u₂)` and consume
//! exactly two uniforms each.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{ExperimentError, LinalgError, SolverError};
use crate::linalg::{batch_ls_solve, format_f64, two_norm, DenseMatrix, ProblemInstance, Vector};
use crate::solvers::{
    als_solve, default_iterations, solve, Method, SolverConfig, SolverRun, StepPolicy, TraceOptions,
    TracePoint, DEFAULT_ILS_ITERATIONS, DEFAULT_STEP_DIVISOR,
};

/// Seed used by the CLI and the reference scenarios when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// Noise levels of the random-matrix study.
pub const SIGMA_SET: [f64; 6] = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0];

/// Matrix shapes of the random-matrix study.
pub const TABLE_DIMS: [(usize, usize); 10] = [
    (100, 1),
    (100, 2),
    (100, 3),
    (100, 5),
    (100, 10),
    (1000, 1),
    (1000, 2),
    (1000, 3),
    (1000, 5),
    (1000, 10),
];

/// Published worst-case relative increase per shape, for comparison with
/// full-scale sweeps.
pub const REFERENCE_R_MAX: [((usize, usize), f64); 10] = [
    ((100, 1), 0.093),
    ((100, 2), 0.097),
    ((100, 3), 0.112),
    ((100, 5), 0.113),
    ((100, 10), 0.16),
    ((1000, 1), 0.095),
    ((1000, 2), 0.095),
    ((1000, 3), 0.107),
    ((1000, 5), 0.128),
    ((1000, 10), 0.153),
];

const RANK_RETRIES: usize = 16;
const FREQUENCY_RETRIES: usize = 100_000;

/// Generator for trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, sigma: f64) -> Vector {
    Vector::from_vec_unchecked((0..len).map(|_| sigma * standard_normal(rng)).collect())
}

fn uniform_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vector {
    Vector::from_vec_unchecked((0..len).map(|_| rng.gen::<f64>()).collect())
}

/// Sum of sinusoids observed at `t = n·T_s`, `n = 1..m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SineScenarioSpec {
    pub m: usize,
    pub p: usize,
    pub sample_interval: f64,
    /// `None` draws `p` frequencies in `(0, 1/(2T_s))` separated by at least
    /// `1/(4 m T_s)`.
    pub frequencies: Option<Vec<f64>>,
    /// `None` draws amplitudes uniformly from `[0, 1)`.
    pub amplitudes: Option<Vec<f64>>,
    pub sigma: f64,
    pub seed: u64,
}

impl Default for SineScenarioSpec {
    fn default() -> Self {
        Self { m: 100, p: 8, sample_interval: 1.0, frequencies: None, amplitudes: None, sigma: 1e-2, seed: DEFAULT_SEED }
    }
}

impl SineScenarioSpec {
    fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::InvalidSpec(msg));
        if self.p == 0 || self.m < self.p {
            return bad(format!("need m >= p >= 1, got m = {}, p = {}", self.m, self.p));
        }
        if !(self.sample_interval > 0.0 && self.sample_interval.is_finite()) {
            return bad(format!("sample interval must be positive, got {}", self.sample_interval));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be non-negative, got {}", self.sigma));
        }
        if let Some(f) = &self.frequencies {
            if f.len() != self.p {
                return bad(format!("expected {} frequencies, got {}", self.p, f.len()));
            }
        }
        if let Some(a) = &self.amplitudes {
            if a.len() != self.p {
                return bad(format!("expected {} amplitudes, got {}", self.p, a.len()));
            }
        }
        Ok(())
    }

    /// Rejection-samples sorted frequencies with the minimum separation.
    pub fn draw_frequencies<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>, ExperimentError> {
        let nyquist = 1.0 / (2.0 * self.sample_interval);
        let min_sep = 1.0 / (4.0 * self.m as f64 * self.sample_interval);
        for _ in 0..FREQUENCY_RETRIES {
            let mut f: Vec<f64> = (0..self.p).map(|_| nyquist * rng.gen::<f64>()).collect();
            f.sort_by(f64::total_cmp);
            let separated = f.windows(2).all(|w| w[1] - w[0] >= min_sep);
            if separated && f[0] > 0.0 {
                return Ok(f);
            }
        }
        Err(ExperimentError::InvalidSpec(format!(
            "could not place {} frequencies with separation {min_sep}",
            self.p
        )))
    }
}

/// `H[n−1][k] = cos(2π n T_s f_k)` for `n = 1..m`.
pub fn sine_matrix(m: usize, sample_interval: f64, frequencies: &[f64]) -> Result<DenseMatrix, LinalgError> {
    DenseMatrix::from_fn(m, frequencies.len(), |i, k| {
        (2.0 * PI * (i + 1) as f64 * sample_interval * frequencies[k]).cos()
    })
}

pub fn gen_sine_problem(spec: &SineScenarioSpec) -> Result<ProblemInstance, ExperimentError> {
    spec.validate()?;
    let mut rng = trial_rng(spec.seed, 0);
    let frequencies = match &spec.frequencies {
        Some(f) => f.clone(),
        None => spec.draw_frequencies(&mut rng)?,
    };
    let h = sine_matrix(spec.m, spec.sample_interval, &frequencies)?;
    let x_true = match &spec.amplitudes {
        Some(a) => Vector::new(a.clone())?,
        None => uniform_vector(&mut rng, spec.p),
    };
    let noise = gaussian_vector(&mut rng, spec.m, spec.sigma);
    let problem = ProblemInstance::from_truth(h, x_true, noise)?;
    match problem.check_full_rank() {
        Ok(()) => {}
        Err(LinalgError::RankDeficient { .. }) => return Err(ExperimentError::DegenerateColumns),
        Err(e) => return Err(e.into()),
    }
    debug_assert!(problem.is_consistent());
    Ok(problem)
}

/// Uniform `[0, 1)` entries, redrawn while rank deficient.
pub fn random_matrix<R: Rng + ?Sized>(m: usize, p: usize, rng: &mut R) -> Result<DenseMatrix, ExperimentError> {
    if p == 0 || m < p {
        return Err(ExperimentError::InvalidSpec(format!("need m >= p >= 1, got m = {m}, p = {p}")));
    }
    for _ in 0..RANK_RETRIES {
        let h = DenseMatrix::from_fn(m, p, |_, _| rng.gen::<f64>())?;
        let probe = ProblemInstance::new(h, Vector::zeros(m))?;
        if probe.check_full_rank().is_ok() {
            return Ok(probe.h);
        }
    }
    Err(ExperimentError::Generation { rows: m, cols: p, attempts: RANK_RETRIES })
}

/// Draws `x` uniform in `[0, 1)` and Gaussian noise for a fixed `H`.
pub fn random_trial<R: Rng + ?Sized>(h: &DenseMatrix, sigma: f64, rng: &mut R) -> Result<ProblemInstance, ExperimentError> {
    let x_true = uniform_vector(rng, h.cols());
    let noise = gaussian_vector(rng, h.rows(), sigma);
    Ok(ProblemInstance::from_truth(h.clone(), x_true, noise)?)
}

pub fn gen_random_problem<R: Rng + ?Sized>(
    m: usize,
    p: usize,
    sigma: f64,
    rng: &mut R,
) -> Result<ProblemInstance, ExperimentError> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(ExperimentError::InvalidSpec(format!("sigma must be non-negative, got {sigma}")));
    }
    let h = random_matrix(m, p, rng)?;
    random_trial(&h, sigma, rng)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomSweepSpec {
    pub dims: Vec<(usize, usize)>,
    pub sigmas: Vec<f64>,
    pub matrices_per_sigma: usize,
    pub vectors_per_matrix: usize,
    pub seed: u64,
}

impl RandomSweepSpec {
    /// All table shapes and noise levels with 10 matrices × 10 vectors.
    pub fn desk_scale(seed: u64) -> Self {
        Self {
            dims: TABLE_DIMS.to_vec(),
            sigmas: SIGMA_SET.to_vec(),
            matrices_per_sigma: 10,
            vectors_per_matrix: 10,
            seed,
        }
    }

    /// All table shapes and noise levels with 100 matrices × 100 vectors.
    pub fn full_scale(seed: u64) -> Self {
        Self { matrices_per_sigma: 100, vectors_per_matrix: 100, ..Self::desk_scale(seed) }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.dims.is_empty() || self.sigmas.is_empty() {
            return Err(ExperimentError::InvalidSpec("sweep needs at least one shape and one sigma".into()));
        }
        if let Some((m, p)) = self.dims.iter().find(|(m, p)| *p == 0 || m < p) {
            return Err(ExperimentError::InvalidSpec(format!("invalid shape {m}x{p}")));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(ExperimentError::InvalidSpec(format!("sigma must be positive, got {s}")));
        }
        if self.matrices_per_sigma == 0 || self.vectors_per_matrix == 0 {
            return Err(ExperimentError::InvalidSpec("trial counts must be positive".into()));
        }
        Ok(())
    }
}

/// How ALS is configured for each sweep matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlsPolicy {
    pub step: StepPolicy,
    /// `None` selects [`default_iterations`] per matrix.
    pub iterations: Option<usize>,
}

impl Default for AlsPolicy {
    fn default() -> Self {
        Self { step: StepPolicy::Divisor(DEFAULT_STEP_DIVISOR), iterations: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub m: usize,
    pub p: usize,
    pub sigma: f64,
    pub mean_err_als: f64,
    pub mean_err_ls: f64,
    /// `mean_err_als / mean_err_ls`.
    pub ratio: f64,
    /// Trials that entered the means.
    pub trials: usize,
    pub divergences: usize,
    /// Mean ALS iteration count over the cell's matrices.
    pub mean_iterations: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub m: usize,
    pub p: usize,
    /// `max over sigma of (ratio − 1)`.
    pub r_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    pub summary: Vec<SweepSummary>,
}

impl SweepReport {
    pub const DETAIL_HEADER: &'static str = "dim_m,dim_p,sigma,mean_err_als,mean_err_ls,ratio";
    pub const SUMMARY_HEADER: &'static str = "dim_m,dim_p,r_max";

    pub fn detail_csv(&self) -> String {
        let mut out = format!("{}\n", Self::DETAIL_HEADER);
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.m,
                c.p,
                format_f64(c.sigma),
                format_f64(c.mean_err_als),
                format_f64(c.mean_err_ls),
                format_f64(c.ratio)
            ));
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = format!("{}\n", Self::SUMMARY_HEADER);
        for s in &self.summary {
            out.push_str(&format!("{},{},{}\n", s.m, s.p, format_f64(s.r_max)));
        }
        out
    }

    pub fn total_divergences(&self) -> usize {
        self.cells.iter().map(|c| c.divergences).sum()
    }

    pub fn r_max(&self, m: usize, p: usize) -> Option<f64> {
        self.summary.iter().find(|s| s.m == m && s.p == p).map(|s| s.r_max)
    }
}

struct MatrixOutcome {
    errors: Vec<(f64, f64)>,
    divergences: usize,
    iterations: usize,
}

fn run_sweep_matrix(
    m: usize,
    p: usize,
    sigma: f64,
    vectors: usize,
    policy: &AlsPolicy,
    mut rng: ChaCha8Rng,
) -> Result<MatrixOutcome, ExperimentError> {
    let h = random_matrix(m, p, &mut rng)?;
    let mu = policy.step.resolve(Method::Als, &h)?;
    let iterations = match policy.iterations {
        Some(n) => n,
        None => default_iterations(&h, mu)?,
    };
    let config = SolverConfig::new(mu).with_iterations(iterations);
    let mut errors = Vec::with_capacity(vectors);
    let mut divergences = 0;
    for _ in 0..vectors {
        let problem = random_trial(&h, sigma, &mut rng)?;
        let x_ls = batch_ls_solve(&problem)?;
        match als_solve(&problem, &config) {
            Ok(run) => {
                let err_als = problem.error_norm(&run.estimate).expect("trial has ground truth");
                let err_ls = problem.error_norm(&x_ls).expect("trial has ground truth");
                errors.push((err_als, err_ls));
            }
            Err(SolverError::Divergence { .. }) => divergences += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(MatrixOutcome { errors, divergences, iterations })
}

/// Monte-Carlo comparison of ALS against batch LS over shapes and noise
/// levels. Matrices run in parallel; aggregation follows trial order.
///
/// Trial `(shape, matrix)` draws from stream `shape·matrices + matrix`
/// for every sigma, so the noise levels are compared at matched seeds.
pub fn run_degradation_sweep(spec: &RandomSweepSpec, policy: &AlsPolicy) -> Result<SweepReport, ExperimentError> {
    spec.validate()?;
    let n_sigma = spec.sigmas.len();
    let n_mat = spec.matrices_per_sigma;
    let jobs: Vec<(usize, usize, usize)> = (0..spec.dims.len())
        .flat_map(|d| (0..n_sigma).flat_map(move |s| (0..n_mat).map(move |j| (d, s, j))))
        .collect();

    let outcomes: Vec<MatrixOutcome> = jobs
        .par_iter()
        .map(|&(d, s, j)| {
            let (m, p) = spec.dims[d];
            // Streams are shared across noise levels so every sigma sees the
            // same matrices, vectors and unit noise draws.
            let stream = (d * n_mat + j) as u64;
            run_sweep_matrix(m, p, spec.sigmas[s], spec.vectors_per_matrix, policy, trial_rng(spec.seed, stream))
        })
        .collect::<Result<_, _>>()?;

    let mut cells = Vec::with_capacity(spec.dims.len() * n_sigma);
    let mut summary = Vec::with_capacity(spec.dims.len());
    for (d, &(m, p)) in spec.dims.iter().enumerate() {
        let mut r_max = f64::NEG_INFINITY;
        for (s, &sigma) in spec.sigmas.iter().enumerate() {
            let start = (d * n_sigma + s) * n_mat;
            let chunk = &outcomes[start..start + n_mat];
            let (mut sum_als, mut sum_ls, mut trials, mut divergences, mut iters) = (0.0, 0.0, 0usize, 0usize, 0usize);
            for outcome in chunk {
                for (a, l) in &outcome.errors {
                    sum_als += a;
                    sum_ls += l;
                }
                trials += outcome.errors.len();
                divergences += outcome.divergences;
                iters += outcome.iterations;
            }
            let mean_err_als = sum_als / trials as f64;
            let mean_err_ls = sum_ls / trials as f64;
            let ratio = mean_err_als / mean_err_ls;
            r_max = r_max.max(ratio - 1.0);
            cells.push(SweepCell {
                m,
                p,
                sigma,
                mean_err_als,
                mean_err_ls,
                ratio,
                trials,
                divergences,
                mean_iterations: iters as f64 / n_mat as f64,
            });
        }
        summary.push(SweepSummary { m, p, r_max });
    }
    Ok(SweepReport { cells, summary })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Iterate,
    /// The window-averaged ALS output.
    Averaged,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Iterate => "iterate",
            RecordKind::Averaged => "averaged",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub error_norm: Option<f64>,
    pub residual_cost: f64,
    pub multiplications: u64,
    pub kind: RecordKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodTrace {
    pub method: Method,
    pub run: SolverRun,
    pub rows: Vec<TraceRow>,
}

impl MethodTrace {
    pub const CSV_HEADER: &'static str = "k,error_norm,residual_cost,cumulative_multiplications,record";

    pub fn file_name(&self) -> String {
        format!("{}_trace.csv", self.method.name())
    }

    pub fn csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.k,
                r.error_norm.map(format_f64).unwrap_or_default(),
                format_f64(r.residual_cost),
                r.multiplications,
                r.kind.name()
            ));
        }
        out
    }

    /// Error norm of the method's returned estimate.
    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.error_norm)
    }
}

/// First cumulative multiplication count at which a traced error norm is at
/// or below `level`.
pub fn multiplications_to_reach(trace: &[TracePoint], level: f64) -> Option<u64> {
    trace
        .iter()
        .find(|t| t.error_norm.is_some_and(|e| e <= level))
        .map(|t| t.multiplications)
}

/// Runs each `(method, config)` with tracing forced on and returns one trace
/// per method. The ALS trace ends with an extra [`RecordKind::Averaged`] row
/// for the window-averaged estimate.
pub fn run_trace_experiment(
    problem: &ProblemInstance,
    runs: &[(Method, SolverConfig)],
) -> Result<Vec<MethodTrace>, ExperimentError> {
    let mut out = Vec::with_capacity(runs.len());
    for (method, config) in runs {
        let mut config = config.clone();
        if !config.trace.record {
            config.trace = TraceOptions::every(1);
        }
        let run = solve(problem, *method, &config)?;
        let mut rows: Vec<TraceRow> = run
            .trace
            .iter()
            .map(|t| TraceRow {
                k: t.k,
                error_norm: t.error_norm,
                residual_cost: t.residual_cost,
                multiplications: t.multiplications,
                kind: RecordKind::Iterate,
            })
            .collect();
        if *method == Method::Als || *method == Method::Batch {
            let kind = if *method == Method::Als { RecordKind::Averaged } else { RecordKind::Iterate };
            rows.push(TraceRow {
                k: run.iterations,
                error_norm: problem.error_norm(&run.estimate),
                residual_cost: crate::linalg::residual_cost(problem, &run.estimate)?,
                multiplications: run.multiplications,
                kind,
            });
        }
        out.push(MethodTrace { method: *method, run, rows });
    }
    Ok(out)
}

/// Configurations used by the reference trace experiment: the default step
/// policy, the default ALS iteration policy, and an ILS budget of at least
/// four times the ALS multiplication total.
pub fn default_trace_configs(
    problem: &ProblemInstance,
    methods: &[Method],
    stride: usize,
) -> Result<Vec<(Method, SolverConfig)>, ExperimentError> {
    let (m, p) = (problem.rows(), problem.cols());
    let als_mu = StepPolicy::default().resolve(Method::Als, &problem.h)?;
    let als_iterations = default_iterations(&problem.h, als_mu)?;
    let als_total = (2 * p + 1) * als_iterations + p;
    let ils_per_iter = 2 * p * m + p;
    let ils_iterations = DEFAULT_ILS_ITERATIONS.max((4 * als_total).div_ceil(ils_per_iter));
    let trace = TraceOptions::every(stride);

    methods
        .iter()
        .map(|&method| {
            let config = match method {
                Method::Als => SolverConfig::new(als_mu).with_iterations(als_iterations),
                Method::Ils => SolverConfig::new(StepPolicy::default().resolve(Method::Ils, &problem.h)?)
                    .with_iterations(ils_iterations),
                Method::Sls | Method::Batch => SolverConfig::new(1.0),
            };
            Ok((method, config.with_trace(trace.clone())))
        })
        .collect()
}

/// Convenience: the default ALS step with the default iteration count.
pub fn reference_als_config(h: &DenseMatrix) -> Result<SolverConfig, ExperimentError> {
    let mu = StepPolicy::default().resolve(Method::Als, h)?;
    Ok(SolverConfig::new(mu).with_iterations(default_iterations(h, mu)?))
}

/// `‖a − b‖₂`.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    two_norm(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_draws_have_unit_moments() {
        let mut rng = trial_rng(3, 0);
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.01, "var {var}");
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<f64> = (0..4).map(|_| trial_rng(9, 5).gen::<f64>()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(trial_rng(9, 5).gen::<f64>(), trial_rng(9, 6).gen::<f64>());
    }

    #[test]
    fn default_frequencies_respect_separation() {
        let spec = SineScenarioSpec::default();
        let f = spec.draw_frequencies(&mut trial_rng(11, 0)).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|v| *v > 0.0 && *v < 0.5));
        assert!(f.windows(2).all(|w| w[1] - w[0] >= 1.0 / 400.0));
    }

    #[test]
    fn sine_noise_free_is_exact() {
        let spec = SineScenarioSpec { sigma: 0.0, ..SineScenarioSpec::default() };
        let p = gen_sine_problem(&spec).unwrap();
        let x = p.x_true.as_ref().unwrap();
        let hx = crate::linalg::mat_vec(&p.h, x).unwrap();
        assert_eq!(hx, p.y);
        assert!(p.is_consistent());
    }

    #[test]
    fn duplicate_frequencies_rejected() {
        let spec = SineScenarioSpec {
            m: 20,
            p: 3,
            frequencies: Some(vec![0.1, 0.1, 0.3]),
            ..SineScenarioSpec::default()
        };
        assert!(matches!(gen_sine_problem(&spec), Err(ExperimentError::DegenerateColumns)));
        let wrong_len = SineScenarioSpec { frequencies: Some(vec![0.1]), ..SineScenarioSpec::default() };
        assert!(matches!(gen_sine_problem(&wrong_len), Err(ExperimentError::InvalidSpec(_))));
    }

    #[test]
    fn random_problem_shape_checks() {
        let mut rng = trial_rng(1, 0);
        assert!(gen_random_problem(2, 3, 0.1, &mut rng).is_err());
        assert!(gen_random_problem(3, 2, -1.0, &mut rng).is_err());
        let p = gen_random_problem(30, 4, 0.1, &mut rng).unwrap();
        assert!(p.is_consistent());
        assert!(p.h.as_slice().iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn sweep_spec_validation() {
        let mut spec = RandomSweepSpec::desk_scale(1);
        spec.sigmas = vec![0.0];
        assert!(run_degradation_sweep(&spec, &AlsPolicy::default()).is_err());
        let full = RandomSweepSpec::full_scale(1);
        assert_eq!(full.dims, TABLE_DIMS.to_vec());
        assert_eq!((full.matrices_per_sigma, full.vectors_per_matrix), (100, 100));
    }
}
