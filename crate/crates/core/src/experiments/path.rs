use serde::Serialize;

use crate::error::{Error, Result};
use crate::schemes::Scheme;

/// Driving increments for one path. `secondary` is required only by schemes
/// with two drivers.
#[derive(Debug, Clone, Copy)]
pub struct Increments<'a> {
    pub primary: &'a [f64],
    pub secondary: Option<&'a [f64]>,
}

impl<'a> Increments<'a> {
    pub fn single(primary: &'a [f64]) -> Self {
        Self {
            primary,
            secondary: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    pub times: Vec<f64>,
    /// Original-space values, starting with `x0`.
    pub values: Vec<f64>,
    pub non_real_count: usize,
    pub clamp_count: usize,
}

impl PathResult {
    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("a path holds at least x0")
    }
}

/// Runs `scheme` for `steps` uniform steps over `[0, horizon]`.
pub fn simulate_path(
    scheme: &Scheme,
    x0: f64,
    horizon: f64,
    steps: usize,
    inc: Increments<'_>,
) -> Result<PathResult> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::Config(format!("horizon must be positive, got {horizon}")));
    }
    if inc.primary.len() < steps {
        return Err(Error::Config(format!(
            "{} increments supplied for {steps} steps",
            inc.primary.len()
        )));
    }
    let secondary = if scheme.id().drivers() == 2 {
        let s = inc
            .secondary
            .ok_or_else(|| Error::Config(format!("scheme {} needs a second driver", scheme.id())))?;
        if s.len() < steps {
            return Err(Error::Config(format!(
                "{} secondary increments supplied for {steps} steps",
                s.len()
            )));
        }
        Some(s)
    } else {
        None
    };

    let dt = horizon / steps.max(1) as f64;
    let mut state = scheme.init(x0)?;
    let mut times = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    times.push(0.0);
    values.push(x0);
    let (mut non_real_count, mut clamp_count) = (0, 0);
    for k in 0..steps {
        let dw2 = secondary.map_or(0.0, |s| s[k]);
        state = scheme
            .step(&state, inc.primary[k], dw2, dt)
            .map_err(|e| e.at_step(k))?;
        non_real_count += usize::from(state.non_real);
        clamp_count += usize::from(state.clamped);
        times.push(horizon * (k + 1) as f64 / steps as f64);
        values.push(scheme.observe(&state));
    }
    Ok(PathResult {
        times,
        values,
        non_real_count,
        clamp_count,
    })
}
