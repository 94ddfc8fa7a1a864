use num_complex::Complex64;

use super::solver::{invert_monotone, Monotonicity, MonotoneSpec, SolverSettings};
use super::{csqrt, positive_root, StepState};
use crate::error::{Error, Result};
use crate::models::CevParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CevLsd {
    Lsd1,
    Lsd2,
    Lsd3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CevCompanion {
    SdTheta,
    Implicit,
}

/// One Lamperti-space step for `z = x^(1-q) / (k3 (1-q))`.
pub fn cev_lsd_step(variant: CevLsd, p: &CevParams, y: f64, dw: f64, dt: f64) -> f64 {
    let e = 1.0 - p.q;
    match variant {
        CevLsd::Lsd1 => {
            let d = 1.0 + p.b * dt / (y * y);
            let phi = (y + dw) / d;
            let k = -2.0 * p.c * dt / d;
            let scale = p.a / (p.c * y.powf((2.0 * p.q - 1.0) / e));
            (phi * phi * k.exp() - scale * k.exp_m1()).sqrt()
        }
        CevLsd::Lsd2 => {
            let phi = dw + y - p.b * dt / y;
            let c = p.a * dt * y.powf((1.0 - 2.0 * p.q) / e);
            positive_root(1.0 + p.c * dt, phi, c)
        }
        CevLsd::Lsd3 => {
            // the -dt/y term comes from the defining equation; it offsets the +dt/v of the root
            let phi = dw + y + p.a * y.powf(-p.q / e) * dt - (p.b + 1.0) * dt / y;
            positive_root(1.0 + p.c * dt, phi, dt)
        }
    }
}

/// The implicit map inverted by the transformed implicit scheme, acting on
/// `v = x^(1-q)`.
pub fn cev_implicit_g(p: &CevParams, dt: f64, v: f64) -> f64 {
    let e = 1.0 - p.q;
    v - e * (p.k1 * v.powf(-p.q / e) - p.k2 * v - p.q * p.k3 * p.k3 / (2.0 * v)) * dt
}

fn cev_implicit_dg(p: &CevParams, dt: f64, v: f64) -> f64 {
    let e = 1.0 - p.q;
    1.0 - e * (-p.k1 * p.q / e * v.powf(-p.q / e - 1.0) - p.k2 + p.q * p.k3 * p.k3 / (2.0 * v * v)) * dt
}

/// Solves `cev_implicit_g(v) = u` on `(0, inf)`, starting the bracket at `seed`.
pub fn cev_implicit_solve(p: &CevParams, dt: f64, u: f64, seed: f64, solver: SolverSettings) -> Result<f64> {
    let g = |v: f64| cev_implicit_g(p, dt, v);
    let dg = |v: f64| cev_implicit_dg(p, dt, v);
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

/// One original-space step of a competitor scheme.
pub fn cev_companion_step(
    variant: CevCompanion,
    p: &CevParams,
    x: &StepState,
    dw: f64,
    dt: f64,
    theta: f64,
    solver: SolverSettings,
) -> Result<StepState> {
    match variant {
        CevCompanion::SdTheta => {
            let z = x.as_complex();
            let d = 1.0 + p.k2 * theta * dt;
            let cpow = |e: f64| {
                if z.im == 0.0 && z.re >= 0.0 {
                    Complex64::new(z.re.powf(e), 0.0)
                } else {
                    z.powf(e)
                }
            };
            let rad = z * (1.0 - p.k2 * dt / d) + p.k1 * dt / d
                - p.k3 * p.k3 * dt / (4.0 * d * d) * cpow(2.0 * p.q - 1.0);
            let (r, neg) = csqrt(rad);
            let v = r + p.k3 / (2.0 * d) * cpow(p.q - 0.5) * dw;
            let out = v * v;
            Ok(StepState {
                value: out.re,
                imag: out.im,
                aux: None,
                non_real: neg || z.im != 0.0 || z.re < 0.0 || out.im != 0.0,
                clamped: false,
            })
        }
        CevCompanion::Implicit => {
            if !(x.is_real() && x.value > 0.0 && x.value.is_finite()) {
                return Err(Error::Domain {
                    what: "x",
                    value: x.value,
                    domain: "(0, inf)",
                });
            }
            let e = 1.0 - p.q;
            let y = x.value.powf(e);
            let v = cev_implicit_solve(p, dt, y + p.k3 * e * dw, y, solver)?;
            Ok(StepState::real(v.powf(1.0 / e)))
        }
    }
}
