//! Closed-form solutions of the per-step auxiliary ODEs.

use crate::error::{Error, Result};

/// Below this `|(1 + l) C dt|` the linear branch of the Bernoulli solution is used.
pub const BERNOULLI_LINEAR_SWITCH: f64 = 1e-12;

/// Coefficients of `y' = B y^(-l) + C y`, `y(t_n) = A`, evaluated after `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub l: f64,
    pub dt: f64,
}

/// `r = y^(1+l)` at `t_n + dt`:
/// `A^(1+l) e^(k) + (B/C) (e^(k) - 1)` with `k = (1+l) C dt`, and
/// `A^(1+l) + (1+l) B dt` when `k` is negligible.
pub fn bernoulli_solution(c: &BernoulliCoeffs) -> Result<f64> {
    if !(c.l > 0.0) {
        return Err(Error::config(format!("power l must be positive, got {}", c.l)));
    }
    if !(c.dt >= 0.0) {
        return Err(Error::config(format!("elapsed time must be non-negative, got {}", c.dt)));
    }
    let p = 1.0 + c.l;
    let a_pow = if p.fract() == 0.0 && p <= i32::MAX as f64 {
        c.a.powi(p as i32)
    } else if c.a >= 0.0 {
        c.a.powf(p)
    } else {
        return Err(Error::Domain {
            what: "A",
            value: c.a,
            domain: "[0, inf) for a fractional power",
        });
    };
    if c.dt == 0.0 {
        return Ok(a_pow);
    }
    let k = p * c.c * c.dt;
    if k.abs() < BERNOULLI_LINEAR_SWITCH {
        Ok(a_pow + p * c.b * c.dt)
    } else {
        Ok(a_pow * k.exp() + c.b / c.c * k.exp_m1())
    }
}

/// `|cos(y/2)|` after `dt` for `y' = rate cot(y/2)`, `y(t_n) = A`.
pub fn wf_cosine_solution(a: f64, rate: f64, dt: f64) -> Result<f64> {
    if !(dt >= 0.0) {
        return Err(Error::config(format!("elapsed time must be non-negative, got {dt}")));
    }
    Ok((a / 2.0).cos().abs() * (-rate * dt / 2.0).exp())
}
