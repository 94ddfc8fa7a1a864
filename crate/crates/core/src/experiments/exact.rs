use rayon::prelude::*;
use serde::Serialize;

use super::convergence::DyadicPlan;
use super::path::{simulate_path, Increments, PathResult};
use super::whole_steps;
use crate::error::{Error, Result};
use crate::models::{CirParams, Model};
use crate::schemes::{cir_exact_ou_step, Scheme, SchemeId};
use crate::wiener::{cir_effective_increment, path_seed, WienerLattice};

/// The squared-OU path and every scheme driven by its effective increments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactCirRun {
    pub times: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub exact: Vec<f64>,
    pub schemes: Vec<(SchemeId, PathResult)>,
}

/// Simulates one exact CIR path (`4 k1 / k3^2 = 2`) from `x1(0) = sqrt(m x0)`,
/// `x2(0) = sqrt((1-m) x0)` on two independent drivers and runs each scheme
/// on the reconstructed one-dimensional increments.
pub fn exact_cir_experiment(
    p: &CirParams,
    m: f64,
    x0: f64,
    dt: f64,
    horizon: f64,
    seed: u64,
    schemes: &[Scheme],
) -> Result<ExactCirRun> {
    let n = whole_steps(horizon, dt)?;
    let lattice = WienerLattice::generate(seed, horizon, n, 0, 2)?;
    exact_cir_on(p, m, x0, horizon, lattice.finest(0), lattice.finest(1), schemes)
}

fn exact_cir_on(
    p: &CirParams,
    m: f64,
    x0: f64,
    horizon: f64,
    dw1: &[f64],
    dw2: &[f64],
    schemes: &[Scheme],
) -> Result<ExactCirRun> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Config(format!("split m must lie in (0, 1), got {m}")));
    }
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(Error::Domain {
            what: "x0",
            value: x0,
            domain: "(0, inf)",
        });
    }
    if let Some(s) = schemes.iter().find(|s| s.params().model() != Model::Cir) {
        return Err(Error::Config(format!(
            "exact CIR comparison needs CIR schemes, got one for {}",
            s.params().model()
        )));
    }
    let n = dw1.len();
    let (mut a, mut b) = ((m * x0).sqrt(), ((1.0 - m) * x0).sqrt());
    let mut x1 = vec![a];
    let mut x2 = vec![b];
    let mut exact = vec![x0];
    let mut effective = Vec::with_capacity(n);
    let dt = horizon / n as f64;
    for k in 0..n {
        effective.push(cir_effective_increment(a, b, dw1[k], dw2[k]).map_err(|e| e.at_step(k))?);
        let (na, nb, x) = cir_exact_ou_step(p, (a, b), dw1[k], dw2[k], dt)?;
        (a, b) = (na, nb);
        x1.push(a);
        x2.push(b);
        exact.push(x);
    }
    let times = (0..=n).map(|k| horizon * k as f64 / n as f64).collect();
    let schemes = schemes
        .iter()
        .map(|s| {
            simulate_path(s, x0, horizon, n, Increments::single(&effective)).map(|r| (s.id(), r))
        })
        .collect::<Result<_>>()?;
    Ok(ExactCirRun {
        times,
        x1,
        x2,
        exact,
        schemes,
    })
}

/// Mean over `paths` of `|scheme_T - exact_T|` for each step size, all step
/// sizes of one path driven by coarsenings of a single two-driver lattice.
#[allow(clippy::too_many_arguments)]
pub fn exact_cir_terminal_error(
    p: &CirParams,
    m: f64,
    x0: f64,
    horizon: f64,
    step_sizes: &[f64],
    paths: usize,
    seed: u64,
    scheme: &Scheme,
) -> Result<Vec<f64>> {
    if paths == 0 {
        return Err(Error::Config("need at least 1 path".into()));
    }
    let finest = step_sizes.iter().cloned().fold(f64::INFINITY, f64::min);
    let plan = DyadicPlan::new(horizon, step_sizes, finest)?;
    let per_path: Vec<Vec<f64>> = (0..paths)
        .into_par_iter()
        .map(|i| -> Result<Vec<f64>> {
            let lattice = WienerLattice::generate(
                path_seed(seed, i as u64),
                horizon,
                plan.base_steps,
                plan.finest_level,
                2,
            )?;
            plan.levels
                .iter()
                .map(|&level| {
                    let dw1 = lattice.coarsen_driver(0, level)?;
                    let dw2 = lattice.coarsen_driver(1, level)?;
                    let run = exact_cir_on(p, m, x0, horizon, &dw1, &dw2, std::slice::from_ref(scheme))?;
                    let exact_t = *run.exact.last().expect("non-empty");
                    Ok((run.schemes[0].1.terminal() - exact_t).abs())
                })
                .collect()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| e.at_path(i)))
        .collect::<Result<_>>()?;
    Ok((0..plan.levels.len())
        .map(|j| per_path.iter().map(|e| e[j]).sum::<f64>() / paths as f64)
        .collect())
}
