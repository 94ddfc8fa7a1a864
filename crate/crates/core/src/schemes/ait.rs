use super::positive_root;
use super::solver::{invert_monotone, Monotonicity, MonotoneSpec, SolverSettings};
use crate::error::{Error, Result};
use crate::models::{pow0, AitParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AitLsd {
    Lsd1,
    Lsd2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AitCompanion {
    /// Inverts the map exactly as printed, including its constant term and
    /// the `+K4/x` sign.
    Implicit,
    /// Inverts the backward-Euler map of the Lamperti drift.
    ImplicitDrift,
}

/// One Lamperti-space step for `z = x^(1-rho)`.
pub fn ait_lsd_step(variant: AitLsd, p: &AitParams, y: f64, dw: f64, dt: f64) -> f64 {
    let phi = -p.big_k3 * dw + y + p.big_k0 * y.powf(p.e2) * dt;
    let c2 = (p.big_k2 * pow0(y, p.e3) + p.big_k4) * dt;
    match variant {
        AitLsd::Lsd1 => {
            let c1 = 1.0 + p.big_km1 * y.powf(p.e4) * dt + p.big_k1 * dt;
            positive_root(c1, phi, c2)
        }
        AitLsd::Lsd2 => {
            let phi = phi - p.big_km1 * y.powf(p.e1) * dt;
            positive_root(1.0 + p.big_k1 * dt, phi, c2)
        }
    }
}

/// The implicit map of either variant, on `z = x^(1-rho)`.
pub fn ait_implicit_g(p: &AitParams, variant: AitCompanion, dt: f64, v: f64) -> f64 {
    let core = p.big_km1 * v.powf(p.e1) - p.big_k0 * v.powf(p.e2) + p.big_k1 * v
        - p.big_k2 * pow0(v, p.e5);
    match variant {
        AitCompanion::Implicit => v + (1.0 + core + p.big_k4 / v) * dt,
        AitCompanion::ImplicitDrift => v + (core - p.big_k4 / v) * dt,
    }
}

fn ait_implicit_dg(p: &AitParams, variant: AitCompanion, dt: f64, v: f64) -> f64 {
    let dpow = |e: f64| if e == 0.0 { 0.0 } else { e * v.powf(e - 1.0) };
    let core = p.big_km1 * dpow(p.e1) - p.big_k0 * dpow(p.e2) + p.big_k1 - p.big_k2 * dpow(p.e5);
    let k4 = p.big_k4 / (v * v);
    match variant {
        AitCompanion::Implicit => 1.0 + (core - k4) * dt,
        AitCompanion::ImplicitDrift => 1.0 + (core + k4) * dt,
    }
}

/// Solves `ait_implicit_g(v) = u` on `(0, inf)`, starting the bracket at `seed`.
pub fn ait_implicit_solve(
    p: &AitParams,
    variant: AitCompanion,
    dt: f64,
    u: f64,
    seed: f64,
    solver: SolverSettings,
) -> Result<f64> {
    let g = |v: f64| ait_implicit_g(p, variant, dt, v);
    let dg = |v: f64| ait_implicit_dg(p, variant, dt, v);
    let spec = MonotoneSpec {
        g: &g,
        dg: Some(&dg),
        lo: 0.0,
        hi: f64::INFINITY,
        direction: Monotonicity::Increasing,
        seed,
    };
    invert_monotone(&spec, u, solver.tol, solver.max_iter)
}

/// One original-space step of an implicit competitor scheme.
pub fn ait_companion_step(
    variant: AitCompanion,
    p: &AitParams,
    x: f64,
    dw: f64,
    dt: f64,
    solver: SolverSettings,
) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(0, inf)",
        });
    }
    let z = x.powf(1.0 - p.rho);
    let v = ait_implicit_solve(p, variant, dt, z - p.big_k3 * dw, z, solver)?;
    Ok(v.powf(1.0 / (1.0 - p.rho)))
}
