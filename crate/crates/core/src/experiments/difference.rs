use serde::Serialize;

use super::path::{simulate_path, Increments};
use super::whole_steps;
use crate::error::{Error, Result};
use crate::schemes::Scheme;
use crate::wiener::WienerLattice;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceSeries {
    pub dt: f64,
    pub times: Vec<f64>,
    /// `A_t - B_t` in original space.
    pub difference: Vec<f64>,
}

/// Pointwise difference of two schemes driven by the same increments, one
/// series per step size. Each step size uses its own lattice drawn from
/// `seed`.
pub fn difference_trajectories(
    a: &Scheme,
    b: &Scheme,
    x0: f64,
    horizon: f64,
    step_sizes: &[f64],
    seed: u64,
) -> Result<Vec<DifferenceSeries>> {
    if a.params().model() != b.params().model() {
        return Err(Error::Config(format!(
            "cannot compare {} with {}: different models",
            a.params().model(),
            b.params().model()
        )));
    }
    let drivers = a.id().drivers().max(b.id().drivers());
    step_sizes
        .iter()
        .map(|&dt| {
            let n = whole_steps(horizon, dt)?;
            let lattice = WienerLattice::generate(seed, horizon, n, 0, drivers)?;
            let inc = Increments {
                primary: lattice.finest(0),
                secondary: (drivers == 2).then(|| lattice.finest(1)),
            };
            let pa = simulate_path(a, x0, horizon, n, inc)?;
            let pb = simulate_path(b, x0, horizon, n, inc)?;
            Ok(DifferenceSeries {
                dt,
                difference: pa.values.iter().zip(&pb.values).map(|(u, v)| u - v).collect(),
                times: pa.times,
            })
        })
        .collect()
}
