//! Inversion of strictly monotone scalar maps, used by the implicit schemes.

use crate::error::{Error, Result};

/// Default absolute/relative residual tolerance for implicit steps, kept a
/// decade below the 1e-12 inversion accuracy the schemes promise.
pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 100;
/// Bracket expansions attempted before giving up.
pub const MAX_EXPANSIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A strictly monotone map `g` on the open interval `(lo, hi)`; either bound
/// may be infinite.
pub struct MonotoneSpec<'a> {
    pub g: &'a dyn Fn(f64) -> f64,
    /// Derivative of `g`; enables safeguarded Newton steps.
    pub dg: Option<&'a dyn Fn(f64) -> f64>,
    pub lo: f64,
    pub hi: f64,
    pub direction: Monotonicity,
    /// Interior starting point for bracket expansion.
    pub seed: f64,
}

impl MonotoneSpec<'_> {
    /// Samples `g` on `samples` interior points and reports whether it is
    /// strictly monotone in the declared direction there.
    pub fn is_monotone_on_samples(&self, samples: usize) -> bool {
        let lo = if self.lo.is_finite() { self.lo } else { self.seed - 1e3 };
        let hi = if self.hi.is_finite() { self.hi } else { self.seed + 1e3 };
        let vals: Vec<f64> = (1..=samples)
            .map(|i| (self.g)(lo + (hi - lo) * i as f64 / (samples + 1) as f64))
            .collect();
        vals.windows(2).all(|w| match self.direction {
            Monotonicity::Increasing => w[1] > w[0],
            Monotonicity::Decreasing => w[1] < w[0],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Returns `x` in `(lo, hi)` with `|g(x) - u| <= tol * max(1, |u|)`.
///
/// A bracket is grown geometrically from `spec.seed` toward the relevant
/// bound, then refined with Newton steps that fall back to bisection whenever
/// they leave the bracket or stall. If the bracket collapses to adjacent
/// floats first, the endpoint with the smaller residual is returned.
pub fn invert_monotone(spec: &MonotoneSpec<'_>, u: f64, tol: f64, max_iter: usize) -> Result<f64> {
    if !(spec.lo < spec.hi) || !(spec.seed > spec.lo && spec.seed < spec.hi) {
        return Err(Error::config(format!(
            "seed {} must lie inside ({}, {})",
            spec.seed, spec.lo, spec.hi
        )));
    }
    if !u.is_finite() {
        return Err(Error::Numeric { context: "inversion target", value: u });
    }
    let sign = match spec.direction {
        Monotonicity::Increasing => 1.0,
        Monotonicity::Decreasing => -1.0,
    };
    // h is increasing with its root at the answer
    let h = |x: f64| -> Result<f64> {
        let v = (spec.g)(x);
        if v.is_finite() {
            Ok(sign * (v - u))
        } else {
            Err(Error::Numeric { context: "monotone map", value: v })
        }
    };
    let threshold = tol * u.abs().max(1.0);

    let x0 = spec.seed;
    let h0 = h(x0)?;
    if h0.abs() <= threshold {
        return Ok(x0);
    }

    // (a, ha) has h < 0, (b, hb) has h > 0
    let (mut a, mut ha, mut b, mut hb);
    if h0 < 0.0 {
        (a, ha) = (x0, h0);
        let mut found = None;
        for k in 1..=MAX_EXPANSIONS {
            let x = expand_up(x0, spec.hi, k);
            let hx = h(x)?;
            if hx >= 0.0 {
                found = Some((x, hx));
                break;
            }
            (a, ha) = (x, hx);
        }
        match found {
            Some((x, hx)) => (b, hb) = (x, hx),
            None => {
                return Err(Error::Inversion {
                    target: u,
                    lo: a,
                    hi: spec.hi,
                    iterations: 0,
                })
            }
        }
    } else {
        (b, hb) = (x0, h0);
        let mut found = None;
        for k in 1..=MAX_EXPANSIONS {
            let x = expand_down(x0, spec.lo, k);
            let hx = h(x)?;
            if hx <= 0.0 {
                found = Some((x, hx));
                break;
            }
            (b, hb) = (x, hx);
        }
        match found {
            Some((x, hx)) => (a, ha) = (x, hx),
            None => {
                return Err(Error::Inversion {
                    target: u,
                    lo: spec.lo,
                    hi: b,
                    iterations: 0,
                })
            }
        }
    }
    if ha.abs() <= threshold {
        return Ok(a);
    }
    if hb.abs() <= threshold {
        return Ok(b);
    }

    let mut x = if h0 < 0.0 { a } else { b };
    let mut hx = if h0 < 0.0 { ha } else { hb };
    let mut last_dx = b - a;
    for _ in 0..max_iter {
        let newton = spec.dg.and_then(|dg| {
            let d = sign * dg(x);
            (d.is_finite() && d > 0.0).then(|| x - hx / d)
        });
        // Newton only while it at least halves the previous step
        let next = match newton {
            Some(n) if n > a && n < b && (n - x).abs() <= 0.5 * last_dx.abs() => n,
            _ => midpoint(a, b),
        };
        if next <= a || next >= b {
            // bracket has collapsed to adjacent floats
            return Ok(if ha.abs() <= hb.abs() { a } else { b });
        }
        last_dx = next - x;
        x = next;
        hx = h(x)?;
        if hx.abs() <= threshold {
            return Ok(x);
        }
        if hx < 0.0 {
            (a, ha) = (x, hx);
        } else {
            (b, hb) = (x, hx);
        }
    }
    Err(Error::Inversion {
        target: u,
        lo: a,
        hi: b,
        iterations: max_iter,
    })
}

fn midpoint(a: f64, b: f64) -> f64 {
    if a > 0.0 && b.is_finite() && b / a > 1e3 {
        // geometric mean for brackets spanning many orders of magnitude
        (a * b).sqrt()
    } else {
        a + (b - a) / 2.0
    }
}

fn expand_up(x0: f64, hi: f64, k: usize) -> f64 {
    if hi.is_finite() {
        hi - (hi - x0) / 2f64.powi(k as i32)
    } else if x0 > 0.0 {
        x0 * 2f64.powi(k as i32)
    } else {
        x0 + (x0.abs() + 1.0) * (2f64.powi(k as i32) - 1.0)
    }
}

fn expand_down(x0: f64, lo: f64, k: usize) -> f64 {
    if lo.is_finite() {
        lo + (x0 - lo) / 2f64.powi(k as i32)
    } else if x0 < 0.0 {
        x0 * 2f64.powi(k as i32)
    } else {
        x0 - (x0.abs() + 1.0) * (2f64.powi(k as i32) - 1.0)
    }
}
