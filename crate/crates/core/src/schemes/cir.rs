use super::{csqrt, positive_root, StepState};
use crate::error::{Error, Result};
use crate::models::{CirParams, EXACT_OU_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CirLsd {
    Lsd1,
    Lsd2,
    Lsd3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CirCompanion {
    SdTheta,
    Alf,
    Ns,
}

/// One Lamperti-space step for `z = (2/k3) sqrt(x)`.
pub fn cir_lsd_step(variant: CirLsd, p: &CirParams, y: f64, dw: f64, dt: f64) -> f64 {
    match variant {
        CirLsd::Lsd1 => {
            let a = dw + (1.0 - p.b * dt) * y;
            (a * a + 2.0 * p.a * dt).sqrt()
        }
        CirLsd::Lsd2 => {
            let a = dw + y;
            let k = 2.0 * -p.b * dt;
            (a * a * k.exp() + p.a / -p.b * k.exp_m1()).sqrt()
        }
        CirLsd::Lsd3 => positive_root(1.0 + p.b * dt, dw + y, p.a * dt),
    }
}

/// One original-space step of a competitor scheme. Negative radicands are
/// carried on in the complex plane and flagged.
pub fn cir_companion_step(
    variant: CirCompanion,
    p: &CirParams,
    x: &StepState,
    dw: f64,
    dt: f64,
    theta: f64,
) -> StepState {
    let x = x.as_complex();
    let mut flagged = x.im != 0.0;
    let out = match variant {
        CirCompanion::SdTheta => {
            let d = 1.0 + p.k2 * theta * dt;
            let rad = x * (1.0 - p.k2 * dt / d) + dt / d * (p.k1 - p.k3 * p.k3 / (4.0 * d));
            let (r, neg) = csqrt(rad);
            flagged |= neg;
            let v = r + p.k3 / (2.0 * d) * dw;
            v * v
        }
        CirCompanion::Alf => {
            let d = 1.0 + p.k2 * dt;
            let rad = 4.0 * (x + (p.k1 - p.k3 * p.k3 / 2.0) * dt) * d + (p.k3 * dw).powi(2);
            let (r, neg) = csqrt(rad);
            flagged |= neg;
            let v = (r + p.k3 * dw) / (2.0 * d);
            v * v
        }
        CirCompanion::Ns => {
            let (u, neg) = csqrt(x);
            flagged |= neg;
            let v = u + p.k3 * dw / 2.0;
            let (r, neg) = csqrt(v * v + (p.k1 - p.k3 * p.k3 / 4.0) * dt);
            flagged |= neg;
            let w = (r + v) / (2.0 + p.k2 * dt);
            w * w
        }
    };
    StepState {
        value: out.re,
        imag: out.im,
        aux: None,
        non_real: flagged || out.im != 0.0,
        clamped: false,
    }
}

/// One step of the squared Ornstein-Uhlenbeck construction, valid when
/// `4 k1 / k3^2 = 2`. Returns `(x1', x2', x1'^2 + x2'^2)`.
pub fn cir_exact_ou_step(
    p: &CirParams,
    state: (f64, f64),
    dw1: f64,
    dw2: f64,
    dt: f64,
) -> Result<(f64, f64, f64)> {
    check_exact_ou(p)?;
    let decay = (-p.k2 * dt / 2.0).exp();
    let gain = p.k3 / p.k2 * (1.0 - decay);
    let x1 = decay * state.0 + gain * dw1;
    let x2 = decay * state.1 + gain * dw2;
    Ok((x1, x2, x1 * x1 + x2 * x2))
}

pub(crate) fn check_exact_ou(p: &CirParams) -> Result<()> {
    let d = p.dimension();
    if (d - 2.0).abs() > EXACT_OU_TOL {
        return Err(Error::config(format!(
            "squared-OU construction needs 4 k1 / k3^2 = 2, got {d}"
        )));
    }
    Ok(())
}
