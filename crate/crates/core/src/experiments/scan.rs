use rayon::prelude::*;
use serde::Serialize;

use super::path::{simulate_path, Increments};
use super::whole_steps;
use crate::error::Result;
use crate::schemes::{Scheme, SchemeId};
use crate::wiener::{path_seed, WienerLattice};

/// Violation counters of one scheme at one step size, summed over paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub scheme: SchemeId,
    pub dt: f64,
    pub paths: usize,
    /// Recorded states (after `x0`) whose real part is negative.
    pub negative_states: usize,
    /// Recorded states outside the open model domain, including negatives.
    pub domain_exits: usize,
    pub non_real_events: usize,
    pub clamp_events: usize,
}

/// Runs every scheme on `paths` paths per step size and tallies domain
/// violations. Path `i` uses the same increments for every scheme.
pub fn domain_violation_scan(
    schemes: &[Scheme],
    x0: f64,
    horizon: f64,
    step_sizes: &[f64],
    paths: usize,
    seed: u64,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for &dt in step_sizes {
        let n = whole_steps(horizon, dt)?;
        for scheme in schemes {
            let drivers = scheme.id().drivers();
            let model = scheme.params().model();
            let per_path = (0..paths)
                .into_par_iter()
                .map(|i| -> Result<[usize; 4]> {
                    let lattice = WienerLattice::generate(path_seed(seed, i as u64), horizon, n, 0, drivers)?;
                    let inc = Increments {
                        primary: lattice.finest(0),
                        secondary: (drivers == 2).then(|| lattice.finest(1)),
                    };
                    let r = simulate_path(scheme, x0, horizon, n, inc).map_err(|e| e.at_path(i))?;
                    let after = &r.values[1..];
                    Ok([
                        after.iter().filter(|v| **v < 0.0).count(),
                        after.iter().filter(|v| !model.in_domain(**v)).count(),
                        r.non_real_count,
                        r.clamp_count,
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            let mut total = [0usize; 4];
            for c in &per_path {
                for (t, v) in total.iter_mut().zip(c) {
                    *t += v;
                }
            }
            rows.push(ScanRow {
                scheme: scheme.id(),
                dt,
                paths,
                negative_states: total[0],
                domain_exits: total[1],
                non_real_events: total[2],
                clamp_events: total[3],
            });
        }
    }
    Ok(rows)
}
