//! Path simulation and the Monte-Carlo experiments built on it.
//!
//! Every experiment derives the Brownian increments of path `i` from
//! `path_seed(seed, i)`, so results do not depend on how paths are scheduled
//! across threads. Per-path results are collected in path order before any
//! reduction.

mod convergence;
mod difference;
mod exact;
mod path;
mod regression;
mod scan;

pub use convergence::{strong_error, strong_error_with, DyadicPlan, ErrorReport, StrongErrorSpec};
pub use difference::{difference_trajectories, DifferenceSeries};
pub use exact::{exact_cir_experiment, exact_cir_terminal_error, ExactCirRun};
pub use path::{simulate_path, Increments, PathResult};
pub use regression::fit_order;
pub use scan::{domain_violation_scan, ScanRow};

/// Number of steps of size `dt` in `[0, horizon]`, if it is a whole number.
pub(crate) fn whole_steps(horizon: f64, dt: f64) -> crate::Result<usize> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(crate::Error::Config(format!("step size must be positive, got {dt}")));
    }
    let n = (horizon / dt).round();
    if n < 1.0 || ((horizon / dt) - n).abs() > 1e-9 * n.max(1.0) {
        return Err(crate::Error::Config(format!(
            "step size {dt} does not divide the horizon {horizon}"
        )));
    }
    Ok(n as usize)
}
