use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use als_core::analysis::cycle_matrix;
use als_core::experiments::{
    default_trace_configs, gen_sine_problem, run_degradation_sweep, run_trace_experiment, AlsPolicy,
    RandomSweepSpec, SineScenarioSpec, DEFAULT_SEED,
};
use als_core::linalg::{format_f64, format_vector, parse_matrix, parse_vector};
use als_core::solvers::{
    default_iterations, max_step_size_als, max_step_size_ils, solve as run_solver, Method, SolverConfig, StepPolicy,
    DEFAULT_ILS_ITERATIONS, DEFAULT_SLS_SCALE, DEFAULT_STEP_DIVISOR,
};
use als_core::{DenseMatrix, ProblemInstance};

use crate::error::{code, CliError};
use crate::manifest::Manifest;
use crate::{AnalyzeArgs, SolveArgs, SweepArgs, TraceArgs};

/// Writes through a sibling temp file and renames into place.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| CliError::io(&format!("writing {}", tmp.display()), e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(&format!("renaming to {}", path.display()), e))
}

fn out_dir(value: Option<String>) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(value.unwrap_or_else(|| ".".into()));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&format!("creating {}", dir.display()), e))?;
    Ok(dir)
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(&format!("reading {path}"), e))
}

fn with_file<T>(path: &str, parsed: Result<T, als_core::LinalgError>) -> Result<T, CliError> {
    parsed.map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    })
}

fn parse_number<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse().map_err(|e| CliError::usage(format!("--{key}: invalid value `{value}`: {e}")))
}

fn step_policy(value: Option<String>) -> Result<StepPolicy, CliError> {
    match value.as_deref().map(str::trim) {
        None | Some("auto") => Ok(StepPolicy::default()),
        Some(v) => {
            let mu: f64 = parse_number("mu", v)?;
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(CliError::usage(format!("--mu must be positive, got {v}")));
            }
            Ok(StepPolicy::Explicit(mu))
        }
    }
}

fn iteration_policy(value: Option<String>) -> Result<Option<usize>, CliError> {
    match value.as_deref().map(str::trim) {
        None | Some("auto") => Ok(None),
        Some(v) => {
            let n: usize = parse_number("iterations", v)?;
            if n == 0 {
                return Err(CliError::usage("--iterations must be positive"));
            }
            Ok(Some(n))
        }
    }
}

fn load_problem(matrix: &str, vector: &str, truth: Option<&str>) -> Result<ProblemInstance, CliError> {
    let h = with_file(matrix, parse_matrix(&read(matrix)?))?;
    let y = with_file(vector, parse_vector(&read(vector)?))?;
    let mut problem = ProblemInstance::new(h, y)?;
    if let Some(path) = truth {
        let x = with_file(path, parse_vector(&read(path)?))?;
        problem = problem.with_truth(x)?;
    }
    Ok(problem)
}

fn required(value: Option<String>, key: &str) -> Result<String, CliError> {
    value.ok_or_else(|| CliError::usage(format!("missing --{key}")))
}

fn metadata(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

pub fn solve(args: &SolveArgs, manifest: &Manifest) -> Result<i32, CliError> {
    let matrix = required(manifest.pick(args.matrix.as_ref(), "matrix"), "matrix")?;
    let vector = required(manifest.pick(args.vector.as_ref(), "vector"), "vector")?;
    let truth = manifest.pick(args.truth.as_ref(), "truth");
    let method: Method = manifest
        .pick(args.method.as_ref(), "method")
        .unwrap_or_else(|| "als".into())
        .parse()
        .map_err(CliError::usage)?;
    let step = step_policy(manifest.pick(args.mu.as_ref(), "mu"))?;
    let iterations = iteration_policy(manifest.pick(args.iterations.as_ref(), "iterations"))?;
    let sls_scale = match manifest.pick(args.sls_scale.as_ref(), "sls-scale") {
        Some(v) => parse_number("sls-scale", &v)?,
        None => DEFAULT_SLS_SCALE,
    };
    let out = out_dir(manifest.pick(args.out.as_ref(), "out"))?;

    let problem = load_problem(&matrix, &vector, truth.as_deref())?;
    let mu = step.resolve(method, &problem.h)?;
    let iterations = match (method, iterations) {
        (_, Some(n)) => Some(n),
        (Method::Als, None) => Some(default_iterations(&problem.h, mu)?),
        (Method::Ils, None) => Some(DEFAULT_ILS_ITERATIONS),
        _ => None,
    };
    let mut config = SolverConfig::new(if mu > 0.0 { mu } else { 1.0 });
    config.iterations = iterations;
    config.sls_initial_scale = sls_scale;

    let started = Instant::now();
    let run = run_solver(&problem, method, &config)?;
    let elapsed = started.elapsed().as_secs_f64();

    write_atomic(&out.join("estimate.txt"), &format_vector(&run.estimate))?;
    let mut meta = vec![
        ("command", "solve".to_string()),
        ("method", method.to_string()),
        ("matrix", matrix),
        ("vector", vector),
        ("m", problem.rows().to_string()),
        ("p", problem.cols().to_string()),
        ("mu", run.mu.map(format_f64).unwrap_or_else(|| "none".into())),
        ("iterations", run.iterations.to_string()),
        ("average_window", run.average_window.map(|w| w.to_string()).unwrap_or_else(|| "none".into())),
        ("multiplications", run.multiplications.to_string()),
    ];
    if method == Method::Sls {
        meta.push(("sls_scale", format_f64(sls_scale)));
    }
    if let Some(err) = problem.error_norm(&run.estimate) {
        meta.push(("error_norm", format_f64(err)));
    }
    meta.push(("wall_time_s", format!("{elapsed:.6}")));
    write_atomic(&out.join("metadata.txt"), &metadata(&meta))?;
    println!("{method}: estimate written to {} ({} multiplications)", out.join("estimate.txt").display(), run.multiplications);
    Ok(code::OK)
}

pub fn analyze(args: &AnalyzeArgs, manifest: &Manifest) -> Result<i32, CliError> {
    let matrix = required(manifest.pick(args.matrix.as_ref(), "matrix"), "matrix")?;
    let step = step_policy(manifest.pick(args.mu.as_ref(), "mu"))?;
    let out = out_dir(manifest.pick(args.out.as_ref(), "out"))?;

    let h: DenseMatrix = with_file(&matrix, parse_matrix(&read(&matrix)?))?;
    let bound_als = max_step_size_als(&h)?;
    let bound_ils = max_step_size_ils(&h)?;
    let mu = step.resolve(Method::Als, &h)?;
    let analysis = cycle_matrix(&h, mu)?;

    let csv = format!("{}\n{}\n", als_core::analysis::CycleAnalysis::CSV_HEADER, analysis.csv_row());
    write_atomic(&out.join("analysis.csv"), &csv)?;
    let report = metadata(&[
        ("command", "analyze".to_string()),
        ("matrix", matrix),
        ("m", h.rows().to_string()),
        ("p", h.cols().to_string()),
        ("max_step_size_als", format_f64(bound_als)),
        ("max_step_size_ils", format_f64(bound_ils)),
        ("mu", format_f64(mu)),
        ("spectral_norm", format_f64(analysis.spectral_norm)),
        ("stable", analysis.stable.to_string()),
    ]);
    write_atomic(&out.join("metadata.txt"), &report)?;
    print!("{report}");
    Ok(code::OK)
}

fn parse_methods(value: &str) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for part in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m: Method = part.parse().map_err(CliError::usage)?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::usage("--methods is empty"));
    }
    Ok(methods)
}

pub fn trace(args: &TraceArgs, manifest: &Manifest) -> Result<i32, CliError> {
    let methods = parse_methods(&manifest.pick(args.methods.as_ref(), "methods").unwrap_or_else(|| "als,ils,sls".into()))?;
    let seed: u64 = match manifest.pick(args.seed.as_ref(), "seed") {
        Some(v) => parse_number("seed", &v)?,
        None => DEFAULT_SEED,
    };
    let stride: usize = match manifest.pick(args.stride.as_ref(), "stride") {
        Some(v) => parse_number("stride", &v)?,
        None => 1,
    };
    let noise_free = manifest.flag(args.noise_free, "noise-free")?;
    let out = out_dir(manifest.pick(args.out.as_ref(), "out"))?;

    let (problem, source) = match manifest.pick(args.matrix.as_ref(), "matrix") {
        Some(matrix) => {
            let vector = required(manifest.pick(args.vector.as_ref(), "vector"), "vector")?;
            let truth = manifest.pick(args.truth.as_ref(), "truth");
            (load_problem(&matrix, &vector, truth.as_deref())?, format!("fixture {matrix}"))
        }
        None => {
            let mut spec = SineScenarioSpec { seed, ..SineScenarioSpec::default() };
            if let Some(v) = manifest.pick(args.sigma.as_ref(), "sigma") {
                spec.sigma = parse_number("sigma", &v)?;
            }
            if noise_free {
                spec.sigma = 0.0;
            }
            (gen_sine_problem(&spec)?, format!("sinusoid m={} p={} sigma={}", spec.m, spec.p, format_f64(spec.sigma)))
        }
    };

    let configs = default_trace_configs(&problem, &methods, stride)?;
    let traces = run_trace_experiment(&problem, &configs)?;
    let mut meta = vec![
        ("command", "trace".to_string()),
        ("source", source),
        ("seed", seed.to_string()),
        ("stride", stride.to_string()),
    ];
    let mut keys: Vec<(String, String)> = Vec::new();
    for t in &traces {
        write_atomic(&out.join(t.file_name()), &t.csv())?;
        let name = t.method.name();
        if let Some(mu) = t.run.mu {
            keys.push((format!("{name}_mu"), format_f64(mu)));
        }
        keys.push((format!("{name}_iterations"), t.run.iterations.to_string()));
        keys.push((format!("{name}_multiplications"), t.run.multiplications.to_string()));
        if let Some(e) = t.final_error() {
            keys.push((format!("{name}_final_error"), format_f64(e)));
        }
        println!("{name}: {} rows -> {}", t.rows.len(), out.join(t.file_name()).display());
    }
    meta.extend(keys.iter().map(|(k, v)| (k.as_str(), v.clone())));
    write_atomic(&out.join("metadata.txt"), &metadata(&meta))?;
    Ok(code::OK)
}

fn parse_dims(value: &str) -> Result<Vec<(usize, usize)>, CliError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|d| {
            let (m, p) = d
                .split_once(['x', 'X'])
                .ok_or_else(|| CliError::usage(format!("--dims: expected MxP, got `{d}`")))?;
            Ok((parse_number("dims", m)?, parse_number("dims", p)?))
        })
        .collect()
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| parse_number(key, s)).collect()
}

pub fn sweep(args: &SweepArgs, manifest: &Manifest) -> Result<i32, CliError> {
    let seed: u64 = match manifest.pick(args.seed.as_ref(), "seed") {
        Some(v) => parse_number("seed", &v)?,
        None => DEFAULT_SEED,
    };
    let full = !args.desk_scale && manifest.flag(args.full_scale, "full-scale")?;
    let mut spec = if full { RandomSweepSpec::full_scale(seed) } else { RandomSweepSpec::desk_scale(seed) };
    if let Some(v) = manifest.pick(args.dims.as_ref(), "dims") {
        spec.dims = parse_dims(&v)?;
    }
    if let Some(v) = manifest.pick(args.sigmas.as_ref(), "sigmas") {
        spec.sigmas = parse_list("sigmas", &v)?;
    }
    if let Some(v) = manifest.pick(args.matrices.as_ref(), "matrices") {
        spec.matrices_per_sigma = parse_number("matrices", &v)?;
    }
    if let Some(v) = manifest.pick(args.vectors.as_ref(), "vectors") {
        spec.vectors_per_matrix = parse_number("vectors", &v)?;
    }
    let divisor: f64 = match manifest.pick(args.step_divisor.as_ref(), "step-divisor") {
        Some(v) => parse_number("step-divisor", &v)?,
        None => DEFAULT_STEP_DIVISOR,
    };
    if !(divisor > 0.0 && divisor.is_finite()) {
        return Err(CliError::usage(format!("--step-divisor must be positive, got {divisor}")));
    }
    let policy = AlsPolicy {
        step: StepPolicy::Divisor(divisor),
        iterations: iteration_policy(manifest.pick(args.iterations.as_ref(), "iterations"))?,
    };
    let out = out_dir(manifest.pick(args.out.as_ref(), "out"))?;

    let started = Instant::now();
    let report = run_degradation_sweep(&spec, &policy)?;
    let elapsed = started.elapsed().as_secs_f64();

    write_atomic(&out.join("sweep_detail.csv"), &report.detail_csv())?;
    write_atomic(&out.join("sweep_summary.csv"), &report.summary_csv())?;

    let dims: Vec<String> = spec.dims.iter().map(|(m, p)| format!("{m}x{p}")).collect();
    let sigmas: Vec<String> = spec.sigmas.iter().map(|s| format_f64(*s)).collect();
    let mut meta = vec![
        ("command", "sweep".to_string()),
        ("scale", if full { "full" } else { "desk" }.to_string()),
        ("seed", seed.to_string()),
        ("dims", dims.join(",")),
        ("sigmas", sigmas.join(",")),
        ("matrices_per_sigma", spec.matrices_per_sigma.to_string()),
        ("vectors_per_matrix", spec.vectors_per_matrix.to_string()),
        ("step_divisor", format_f64(divisor)),
        (
            "iterations",
            policy.iterations.map(|n| n.to_string()).unwrap_or_else(|| "auto".into()),
        ),
        ("divergences", report.total_divergences().to_string()),
    ];
    let per_cell: Vec<(String, String)> = report
        .cells
        .iter()
        .map(|c| (format!("mean_iterations_{}x{}_{}", c.m, c.p, format_f64(c.sigma)), format!("{}", c.mean_iterations)))
        .collect();
    meta.extend(per_cell.iter().map(|(k, v)| (k.as_str(), v.clone())));
    meta.push(("wall_time_s", format!("{elapsed:.3}")));
    write_atomic(&out.join("metadata.txt"), &metadata(&meta))?;

    for s in &report.summary {
        println!("{}x{}: r_max = {:.2}%", s.m, s.p, 100.0 * s.r_max);
    }
    if report.total_divergences() > 0 {
        eprintln!("warning: {} ALS trials diverged and were excluded", report.total_divergences());
        return Ok(code::SWEEP_DIVERGENCES);
    }
    Ok(code::OK)
}
