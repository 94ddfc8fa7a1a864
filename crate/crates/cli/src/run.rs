use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use lsd_core::experiments::{
    difference_trajectories, domain_violation_scan, exact_cir_experiment, exact_cir_terminal_error,
    simulate_path, strong_error, Increments, StrongErrorSpec,
};
use lsd_core::wiener::WienerLattice;
use lsd_core::{ModelParams, Scheme, SchemeId, SchemeOptions};
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Kind};
use crate::error::{ConfigError, RunError};

/// Files written by one run and the summary stored in its JSON file.
#[derive(Debug)]
pub struct Outcome {
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    pub summary: Value,
}

/// Runs the experiment and writes `<name>.csv` and `<name>.json` into
/// `config.output`. Nothing is left on disk when any step fails.
pub fn run(config: &ExperimentConfig) -> Result<Outcome, RunError> {
    let started = Instant::now();
    let params = config.model_params()?;
    let opts = SchemeOptions {
        theta: config.theta,
        wf_implicit_sign: config.wf_implicit_sign,
        exact_split: config.m,
        ..SchemeOptions::default()
    };
    let schemes = config
        .schemes
        .iter()
        .map(|&id| Scheme::new(id, params, opts))
        .collect::<lsd_core::Result<Vec<_>>>()?;

    let (csv, results) = match config.kind {
        Kind::Simulate => simulate(config, &schemes)?,
        Kind::Convergence => convergence(config, &schemes, params, opts)?,
        Kind::Compare => compare(config, &schemes)?,
        Kind::ExactCir => exact_cir(config, &schemes, params)?,
        Kind::Scan => scan(config, &schemes)?,
    };

    let summary = json!({
        "kind": config.kind.name(),
        "name": config.name,
        "model": config.model,
        "params": config.params,
        "seed": config.seed,
        "schemes": config.schemes,
        "x0": config.x0,
        "T": config.horizon,
        "dt": config.dt,
        "results": results,
        "wall_time_seconds": started.elapsed().as_secs_f64(),
    });
    let json_text = serde_json::to_string_pretty(&summary)? + "\n";
    let (csv_path, json_path) = write_outputs(&config.output, &config.name, &csv, &json_text)?;
    Ok(Outcome {
        csv_path,
        json_path,
        summary,
    })
}

/// Shortest decimal form that parses back to the same double.
pub fn real(x: f64) -> String {
    format!("{x:e}")
}

fn steps(horizon: f64, dt: f64) -> Result<usize, RunError> {
    let n = (horizon / dt).round();
    if n < 1.0 || (horizon / dt - n).abs() > 1e-9 * n {
        return Err(ConfigError::new(format!("step size {dt} does not divide T = {horizon}")).into());
    }
    Ok(n as usize)
}

fn simulate(config: &ExperimentConfig, schemes: &[Scheme]) -> Result<(String, Value), RunError> {
    let drivers = schemes.iter().map(|s| s.id().drivers()).max().unwrap_or(1);
    let mut csv = String::from("scheme,dt,t,x\n");
    let mut results = Vec::new();
    for &dt in &config.dt {
        let n = steps(config.horizon, dt)?;
        let lattice = WienerLattice::generate(config.seed, config.horizon, n, 0, drivers)?;
        let inc = Increments {
            primary: lattice.finest(0),
            secondary: (drivers == 2).then(|| lattice.finest(1)),
        };
        for s in schemes {
            let path = simulate_path(s, config.x0, config.horizon, n, inc)?;
            for (t, x) in path.times.iter().zip(&path.values) {
                writeln!(csv, "{},{},{},{}", s.id(), real(dt), real(*t), real(*x)).expect("string write");
            }
            results.push(json!({
                "scheme": s.id(),
                "dt": dt,
                "terminal": path.terminal(),
                "non_real_count": path.non_real_count,
                "clamp_count": path.clamp_count,
            }));
        }
    }
    Ok((csv, Value::Array(results)))
}

fn convergence(
    config: &ExperimentConfig,
    schemes: &[Scheme],
    params: ModelParams,
    opts: SchemeOptions,
) -> Result<(String, Value), RunError> {
    let mut csv = String::from("scheme,dt,rms,stderr\n");
    let mut results = Vec::new();
    for s in schemes {
        let reference = Scheme::new(config.reference.unwrap_or(s.id()), params, opts)?;
        let report = strong_error(&StrongErrorSpec {
            scheme: s,
            reference: &reference,
            x0: config.x0,
            horizon: config.horizon,
            step_sizes: &config.dt,
            ref_step: config.ref_step,
            paths: config.paths,
            seed: config.seed,
        })?;
        for ((dt, rms), se) in report.step_sizes.iter().zip(&report.rms_errors).zip(&report.std_errors) {
            writeln!(csv, "{},{},{},{}", s.id(), real(*dt), real(*rms), real(*se)).expect("string write");
        }
        results.push(json!({
            "scheme": s.id(),
            "reference": reference.id(),
            "ref_step": report.ref_step,
            "M": report.sample_count,
            "slope": report.slope,
            "intercept": report.intercept,
        }));
    }
    Ok((csv, Value::Array(results)))
}

fn compare(config: &ExperimentConfig, schemes: &[Scheme]) -> Result<(String, Value), RunError> {
    let [a, b] = schemes else {
        return Err(ConfigError::new(format!(
            "compare needs exactly two schemes, got {}",
            schemes.len()
        ))
        .into());
    };
    let series = difference_trajectories(a, b, config.x0, config.horizon, &config.dt, config.seed)?;
    let mut csv = String::from("dt,t,difference\n");
    let mut per_dt = Vec::new();
    for s in &series {
        for (t, d) in s.times.iter().zip(&s.difference) {
            writeln!(csv, "{},{},{}", real(s.dt), real(*t), real(*d)).expect("string write");
        }
        let max = s.difference.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        per_dt.push(json!({ "dt": s.dt, "max_abs_difference": max }));
    }
    Ok((csv, json!({ "a": a.id(), "b": b.id(), "series": per_dt })))
}

fn exact_cir(config: &ExperimentConfig, schemes: &[Scheme], params: ModelParams) -> Result<(String, Value), RunError> {
    let ModelParams::Cir(p) = params else {
        return Err(ConfigError::new("exact-cir needs model = cir").into());
    };
    if schemes.iter().any(|s| s.id() == SchemeId::CirExactOu) {
        return Err(ConfigError::new("exact_ou is the exact path itself; list only schemes to compare").into());
    }
    let mut csv = String::from("series,dt,t,x\n");
    for &dt in &config.dt {
        let run = exact_cir_experiment(&p, config.m, config.x0, dt, config.horizon, config.seed, schemes)?;
        let mut emit = |label: &str, values: &[f64]| {
            for (t, x) in run.times.iter().zip(values) {
                writeln!(csv, "{label},{},{},{}", real(dt), real(*t), real(*x)).expect("string write");
            }
        };
        emit("exact", &run.exact);
        emit("x1", &run.x1);
        emit("x2", &run.x2);
        for (id, path) in &run.schemes {
            emit(id.name(), &path.values);
        }
    }
    let mut errors = Vec::new();
    for s in schemes {
        let e = exact_cir_terminal_error(&p, config.m, config.x0, config.horizon, &config.dt, config.paths, config.seed, s)?;
        errors.push(json!({ "scheme": s.id(), "mean_abs_terminal_error": e }));
    }
    Ok((csv, json!({ "m": config.m, "M": config.paths, "errors": errors })))
}

fn scan(config: &ExperimentConfig, schemes: &[Scheme]) -> Result<(String, Value), RunError> {
    let rows = domain_violation_scan(schemes, config.x0, config.horizon, &config.dt, config.paths, config.seed)?;
    let mut csv = String::from("scheme,dt,paths,negative_states,domain_exits,non_real_events,clamp_events\n");
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.scheme,
            real(r.dt),
            r.paths,
            r.negative_states,
            r.domain_exits,
            r.non_real_events,
            r.clamp_events
        )
        .expect("string write");
    }
    let totals: Vec<Value> = schemes
        .iter()
        .map(|s| {
            let mine = rows.iter().filter(|r| r.scheme == s.id());
            let sum = |f: fn(&lsd_core::experiments::ScanRow) -> usize| mine.clone().map(f).sum::<usize>();
            json!({
                "scheme": s.id(),
                "negative_states": sum(|r| r.negative_states),
                "domain_exits": sum(|r| r.domain_exits),
                "non_real_events": sum(|r| r.non_real_events),
                "clamp_events": sum(|r| r.clamp_events),
            })
        })
        .collect();
    Ok((csv, json!({ "rows": rows, "totals": totals })))
}

fn write_outputs(dir: &Path, name: &str, csv: &str, json: &str) -> Result<(PathBuf, PathBuf), RunError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let csv_path = dir.join(format!("{name}.csv"));
    let json_path = dir.join(format!("{name}.json"));
    let written = fs::write(&csv_path, csv)
        .map_err(io(&csv_path))
        .and_then(|_| fs::write(&json_path, json).map_err(io(&json_path)));
    if let Err(e) = written {
        let _ = fs::remove_file(&csv_path);
        let _ = fs::remove_file(&json_path);
        return Err(e);
    }
    Ok((csv_path, json_path))
}
