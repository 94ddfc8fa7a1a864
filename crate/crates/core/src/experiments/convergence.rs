use rayon::prelude::*;
use serde::Serialize;

use super::path::{simulate_path, Increments};
use super::regression::fit_order;
use super::whole_steps;
use crate::error::{Error, Result};
use crate::schemes::{Scheme, SchemeId};
use crate::wiener::{path_seed, WienerLattice};

/// Step sizes laid out on one dyadic lattice: the coarsest step is the base
/// level and the reference step is the finest.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicPlan {
    pub horizon: f64,
    pub base_steps: usize,
    pub finest_level: u32,
    /// Lattice level of each step size, in input order.
    pub levels: Vec<u32>,
}

impl DyadicPlan {
    pub fn new(horizon: f64, step_sizes: &[f64], ref_step: f64) -> Result<Self> {
        if step_sizes.is_empty() {
            return Err(Error::Config("at least one step size is required".into()));
        }
        let n_ref = whole_steps(horizon, ref_step)?;
        let counts = step_sizes
            .iter()
            .map(|&dt| whole_steps(horizon, dt))
            .collect::<Result<Vec<_>>>()?;
        for (&n, &dt) in counts.iter().zip(step_sizes) {
            if n > n_ref || n_ref % n != 0 || !(n_ref / n).is_power_of_two() {
                return Err(Error::Config(format!(
                    "step sizes must be dyadic multiples of the reference step {ref_step}; {dt} is not"
                )));
            }
        }
        let base = *counts.iter().min().expect("non-empty");
        let finest_level = (n_ref / base).trailing_zeros();
        let levels = counts.iter().map(|n| (n / base).trailing_zeros()).collect();
        Ok(Self {
            horizon,
            base_steps: base,
            finest_level,
            levels,
        })
    }
}

/// Strong-error data of one scheme against a reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub scheme: Option<SchemeId>,
    pub reference: Option<SchemeId>,
    pub ref_step: f64,
    pub step_sizes: Vec<f64>,
    pub rms_errors: Vec<f64>,
    /// Standard error of each RMS estimate (delta method).
    pub std_errors: Vec<f64>,
    /// Least-squares slope over the points with a positive error; `None` when
    /// fewer than two such points exist.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub sample_count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct StrongErrorSpec<'a> {
    pub scheme: &'a Scheme,
    pub reference: &'a Scheme,
    pub x0: f64,
    pub horizon: f64,
    pub step_sizes: &'a [f64],
    pub ref_step: f64,
    pub paths: usize,
    pub seed: u64,
}

/// RMS terminal error of `scheme` against `reference`, every path driven by
/// coarsenings of its own lattice.
pub fn strong_error(spec: &StrongErrorSpec<'_>) -> Result<ErrorReport> {
    if spec.scheme.params().model() != spec.reference.params().model() {
        return Err(Error::Config("scheme and reference must share one model".into()));
    }
    let plan = DyadicPlan::new(spec.horizon, spec.step_sizes, spec.ref_step)?;
    let drivers = spec.scheme.id().drivers().max(spec.reference.id().drivers());
    let run = |s: &Scheme, lattice: &WienerLattice, level: u32| -> Result<f64> {
        let primary = lattice.coarsen(level)?;
        let secondary = if drivers == 2 {
            Some(lattice.coarsen_driver(1, level)?)
        } else {
            None
        };
        let inc = Increments {
            primary: &primary,
            secondary: secondary.as_deref(),
        };
        Ok(simulate_path(s, spec.x0, spec.horizon, primary.len(), inc)?.terminal())
    };
    let mut report = strong_error_with(
        &plan,
        spec.paths,
        spec.seed,
        drivers,
        |l, level| run(spec.scheme, l, level),
        |l, level| run(spec.reference, l, level),
    )?;
    report.scheme = Some(spec.scheme.id());
    report.reference = Some(spec.reference.id());
    report.step_sizes = spec.step_sizes.to_vec();
    report.ref_step = spec.ref_step;
    Ok(report)
}

/// Generic form of [`strong_error`]: `candidate(lattice, level)` and
/// `reference(lattice, finest_level)` return terminal values of one path.
pub fn strong_error_with<F, G>(
    plan: &DyadicPlan,
    paths: usize,
    seed: u64,
    drivers: usize,
    candidate: F,
    reference: G,
) -> Result<ErrorReport>
where
    F: Fn(&WienerLattice, u32) -> Result<f64> + Sync,
    G: Fn(&WienerLattice, u32) -> Result<f64> + Sync,
{
    if paths < 2 {
        return Err(Error::Config(format!("need at least 2 paths, got {paths}")));
    }
    let per_path: Vec<Vec<f64>> = (0..paths)
        .into_par_iter()
        .map(|i| -> Result<Vec<f64>> {
            let lattice = WienerLattice::generate(
                path_seed(seed, i as u64),
                plan.horizon,
                plan.base_steps,
                plan.finest_level,
                drivers,
            )?;
            let exact = reference(&lattice, plan.finest_level)?;
            plan.levels
                .iter()
                .map(|&level| candidate(&lattice, level).map(|v| (v - exact).powi(2)))
                .collect()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| e.at_path(i)))
        .collect::<Result<_>>()?;

    let m = paths as f64;
    let mut rms_errors = Vec::with_capacity(plan.levels.len());
    let mut std_errors = Vec::with_capacity(plan.levels.len());
    for j in 0..plan.levels.len() {
        // path-order summation keeps the result independent of scheduling
        let mean = per_path.iter().map(|e| e[j]).sum::<f64>() / m;
        let var = per_path.iter().map(|e| (e[j] - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let rms = mean.sqrt();
        rms_errors.push(rms);
        std_errors.push(if rms > 0.0 { (var / m).sqrt() / (2.0 * rms) } else { 0.0 });
    }
    let step_sizes: Vec<f64> = plan
        .levels
        .iter()
        .map(|&l| plan.horizon / (plan.base_steps << l) as f64)
        .collect();
    let points: Vec<(f64, f64)> = step_sizes
        .iter()
        .zip(&rms_errors)
        .filter(|(_, e)| **e > 0.0)
        .map(|(d, e)| (*d, *e))
        .collect();
    let fit = fit_order(&points).ok();
    Ok(ErrorReport {
        scheme: None,
        reference: None,
        ref_step: plan.horizon / (plan.base_steps << plan.finest_level) as f64,
        step_sizes,
        rms_errors,
        std_errors,
        slope: fit.map(|f| f.0),
        intercept: fit.map(|f| f.1),
        sample_count: paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_levels() {
        let dts: Vec<f64> = (6..=11).map(|k| 2f64.powi(-k)).collect();
        let plan = DyadicPlan::new(1.0, &dts, 2f64.powi(-14)).unwrap();
        assert_eq!(plan.base_steps, 64);
        assert_eq!(plan.finest_level, 8);
        assert_eq!(plan.levels, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn plan_rejects_non_dyadic_steps() {
        assert!(matches!(DyadicPlan::new(1.0, &[0.1, 0.3], 0.01), Err(Error::Config(_))));
        assert!(matches!(DyadicPlan::new(1.0, &[0.25, 0.1], 0.05), Err(Error::Config(_))));
        assert!(matches!(DyadicPlan::new(1.0, &[0.01], 0.1), Err(Error::Config(_))));
    }
}
