use super::positive_root;
use crate::models::Heston32Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HestonLsd {
    Lsd1,
    Lsd2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HestonCompanion {
    SdExp,
    Implicit,
}

/// One Lamperti-space step for `z = 2 / (k3 sqrt(x))`.
pub fn heston_lsd_step(variant: HestonLsd, p: &Heston32Params, y: f64, dw: f64, dt: f64) -> f64 {
    match variant {
        HestonLsd::Lsd1 => {
            let a = dw + (1.0 - p.k1 * dt / 2.0) * y;
            (a * a + p.c_star * dt).sqrt()
        }
        HestonLsd::Lsd2 => {
            let a = dw + y;
            let k = -p.k1 * dt;
            (a * a * k.exp() - p.c_star * k.exp_m1() / p.k1).sqrt()
        }
    }
}

/// The implicit scheme's map on `w = x^(-1/2)`.
pub fn heston_implicit_g(p: &Heston32Params, dt: f64, w: f64) -> f64 {
    (1.0 + p.k1 * dt / 2.0) * w - p.c_impl * dt / w
}

/// The positive solution of `heston_implicit_g(w) = u`; `G(w) w = u w` is a
/// quadratic in `w` with exactly one positive root.
pub fn heston_implicit_solve(p: &Heston32Params, dt: f64, u: f64) -> f64 {
    positive_root(1.0 + p.k1 * dt / 2.0, u, p.c_impl * dt)
}

/// One original-space step of a competitor scheme.
pub fn heston_companion_step(
    variant: HestonCompanion,
    p: &Heston32Params,
    x: f64,
    dw: f64,
    dt: f64,
) -> f64 {
    match variant {
        HestonCompanion::SdExp => {
            x * ((p.k1 - p.k2 * x - p.k3 * p.k3 * x / 2.0) * dt + p.k3 * x.sqrt() * dw).exp()
        }
        HestonCompanion::Implicit => {
            let w = heston_implicit_solve(p, dt, 1.0 / x.sqrt() - p.k3 / 2.0 * dw);
            1.0 / (w * w)
        }
    }
}
