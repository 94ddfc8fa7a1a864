use std::f64::consts::PI;

use super::solver::{invert_monotone, Monotonicity, MonotoneSpec, SolverSettings};
use super::{positive_root, StepState};
use crate::error::{Error, Result};
use crate::models::{hyb_admissible, WfParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WfLsd {
    Lsd1,
    Lsd2,
    Lsd3,
    Lsd4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WfCompanion {
    Sd,
    SdAlt,
    Biss,
    Hyb,
    Implicit,
}

/// Which sign of the `tan` term the implicit scheme's map uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WfImplicitSign {
    /// `G(x) = x - a cot(x/2) dt - b tan(x/2) dt`, inverted on the branch
    /// where it increases.
    #[default]
    Printed,
    /// `G(x) = x - a cot(x/2) dt + b tan(x/2) dt`, the backward-Euler map of
    /// the Lamperti drift; increasing on all of `(0, pi)`.
    Corrected,
}

/// Below this magnitude the LSD2 denominator is treated as vanishing.
const LSD2_DENOM_EPS: f64 = 1e-12;
/// Distance from `0` and `pi` at which folded angles are placed.
const ANGLE_MARGIN: f64 = 1e-12;

/// One Lamperti-space step for `z = 2 asin(sqrt(x))`. `clamped` marks steps
/// whose angle had to be folded or clamped back into `(0, pi)`.
pub fn wf_lsd_step(variant: WfLsd, p: &WfParams, y: f64, dw: f64, dt: f64) -> Result<StepState> {
    let half = y / 2.0;
    let tan_term = p.b / y * half.tan() * dt;
    let raw = match variant {
        WfLsd::Lsd1 => {
            let d = 1.0 + tan_term;
            let phi = (p.k3 * dw + y) / d;
            let rate = p.a / d;
            let c = (phi / 2.0).cos().abs() * (-rate * dt / 2.0).exp();
            if c > 1.0 {
                return Ok(fold(2.0 * 1f64.acos(), true));
            }
            2.0 * c.acos()
        }
        WfLsd::Lsd2 => {
            let d = 1.0 - p.a / y / half.tan() * dt + tan_term;
            if d.abs() < LSD2_DENOM_EPS {
                return Err(Error::StepSize {
                    dt,
                    reason: "LSD2 denominator vanishes",
                });
            }
            (p.k3 * dw + y) / d
        }
        WfLsd::Lsd3 => (p.k3 * dw + y + p.a / half.tan() * dt) / (1.0 + tan_term),
        WfLsd::Lsd4 => {
            let phi = p.k3 * dw + y - dt / y + (p.a / half.tan() - p.b * half.tan()) * dt;
            positive_root(1.0, phi, dt)
        }
    };
    Ok(fold(raw, false))
}

/// Maps an angle into `(0, pi)` without changing `sin^2(y/2)`, except at the
/// exact endpoints which are nudged inward.
fn fold(y: f64, already_clamped: bool) -> StepState {
    if y > 0.0 && y < PI {
        let mut s = StepState::real(y);
        s.clamped = already_clamped;
        return s;
    }
    let mut r = if y.is_finite() { y.rem_euclid(2.0 * PI) } else { PI / 2.0 };
    if r > PI {
        r = 2.0 * PI - r;
    }
    let mut s = StepState::real(r.clamp(ANGLE_MARGIN, PI - ANGLE_MARGIN));
    s.clamped = true;
    s
}

/// Clamps an `asin` argument to `[0, 1]`, reporting whether it moved.
fn clamp_unit(v: f64) -> (f64, bool) {
    let c = v.clamp(0.0, 1.0);
    (c, c != v)
}

fn sd_map(p: &WfParams, inner: f64, dw: f64) -> StepState {
    let (inner, clamped) = clamp_unit(inner);
    let s = (p.k3 / 2.0 * dw + inner.sqrt().asin()).sin();
    StepState {
        value: s * s,
        clamped,
        ..StepState::default()
    }
}

/// The implicit scheme's map on angles.
pub fn wf_implicit_g(p: &WfParams, sign: WfImplicitSign, dt: f64, v: f64) -> f64 {
    let t = (v / 2.0).tan();
    match sign {
        WfImplicitSign::Printed => v - p.a / t * dt - p.b * t * dt,
        WfImplicitSign::Corrected => v - p.a / t * dt + p.b * t * dt,
    }
}

fn wf_implicit_dg(p: &WfParams, sign: WfImplicitSign, dt: f64, v: f64) -> f64 {
    let (s, c) = (v / 2.0).sin_cos();
    let csc2 = 1.0 / (s * s);
    let sec2 = 1.0 / (c * c);
    match sign {
        WfImplicitSign::Printed => 1.0 + p.a / 2.0 * csc2 * dt - p.b / 2.0 * sec2 * dt,
        WfImplicitSign::Corrected => 1.0 + p.a / 2.0 * csc2 * dt + p.b / 2.0 * sec2 * dt,
    }
}

/// Upper end of the interval `(0, hi)` on which the implicit map is
/// increasing: `pi` for the corrected map, the maximiser of the printed map.
pub fn wf_implicit_upper(p: &WfParams, sign: WfImplicitSign, dt: f64) -> Result<f64> {
    match sign {
        WfImplicitSign::Corrected => Ok(PI),
        WfImplicitSign::Printed => {
            // G' decreases from +inf to -inf on (0, pi)
            let dg = |v: f64| wf_implicit_dg(p, sign, dt, v);
            let spec = MonotoneSpec {
                g: &dg,
                dg: None,
                lo: 0.0,
                hi: PI,
                direction: Monotonicity::Decreasing,
                seed: PI / 2.0,
            };
            invert_monotone(&spec, 0.0, 1e-14, 200)
        }
    }
}

/// Solves `wf_implicit_g(v) = u` on `(0, wf_implicit_upper)`. A `seed`
/// outside that interval is replaced by its midpoint.
pub fn wf_implicit_solve(
    p: &WfParams,
    sign: WfImplicitSign,
    dt: f64,
    u: f64,
    seed: f64,
    solver: SolverSettings,
) -> Result<f64> {
    let hi = wf_implicit_upper(p, sign, dt)?;
    let g = |v: f64| wf_implicit_g(p, sign, dt, v);
    let dg = |v: f64| wf_implicit_dg(p, sign, dt, v);
    let spec = MonotoneSpec {
        g: &g,
        dg: Some(&dg),
        lo: 0.0,
        hi,
        direction: Monotonicity::Increasing,
        seed: if seed > 0.0 && seed < hi { seed } else { hi / 2.0 },
    };
    invert_monotone(&spec, u, solver.tol, solver.max_iter)
}

/// One original-space step of a competitor scheme; outputs lie in `[0, 1]`.
pub fn wf_companion_step(
    variant: WfCompanion,
    p: &WfParams,
    x: f64,
    dw: f64,
    dt: f64,
    sign: WfImplicitSign,
    solver: SolverSettings,
) -> Result<StepState> {
    match variant {
        WfCompanion::Sd => Ok(sd_map(p, x + (p.a + x * p.beta) * dt, dw)),
        WfCompanion::SdAlt => {
            let inner = (x * (1.0 + p.beta * dt) + p.a * dt) / (1.0 + (p.a + p.beta) * dt);
            Ok(sd_map(p, inner, dw))
        }
        WfCompanion::Biss => {
            let eps = (p.k1 * dt)
                .min((p.k2 - p.k1) * dt)
                .min(1.0 - p.k1 * dt)
                .min(1.0 - (p.k2 - p.k1) * dt);
            let d1 = if x < eps || x > 1.0 - eps {
                p.k3 * ((1.0 - eps) / eps).sqrt()
            } else if x < 0.5 {
                p.k3 * ((1.0 - x) / x).sqrt()
            } else {
                p.k3 * (x / (1.0 - x)).sqrt()
            };
            let noise = p.k3 * (x * (1.0 - x)).max(0.0).sqrt() * dw / (1.0 + d1 * dw.abs());
            let (v, clamped) = clamp_unit(x + (p.k1 - p.k2 * x) * dt + noise * (1.0 - p.k2 * dt));
            Ok(StepState {
                value: v,
                clamped,
                ..StepState::default()
            })
        }
        WfCompanion::Hyb => {
            if !hyb_admissible(p) {
                return Err(Error::config(format!(
                    "HYB needs k1/k2 inside (k3^2/(4 k2), 1 - k3^2/(4 k2)), got k1/k2 = {}",
                    p.k1 / p.k2
                )));
            }
            let (xc, c1) = clamp_unit(x);
            let s = (p.k3 / 2.0 * dw + xc.sqrt().asin()).sin();
            let growth = (p.beta * dt).exp();
            let raw = p.a / p.beta * (p.beta * dt).exp_m1() + growth * s * s;
            let (v, c2) = clamp_unit(raw);
            Ok(StepState {
                value: v,
                clamped: c1 || c2,
                ..StepState::default()
            })
        }
        WfCompanion::Implicit => {
            let (xc, clamped) = clamp_unit(x);
            let y = 2.0 * xc.sqrt().asin();
            let v = wf_implicit_solve(p, sign, dt, y + p.k3 * dw, y, solver)?;
            let s = (v / 2.0).sin();
            Ok(StepState {
                value: s * s,
                clamped,
                ..StepState::default()
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::wf_cosine_solution;

    fn paper() -> WfParams {
        WfParams::new(1.0, 2.0, 0.20101).unwrap()
    }

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    #[test]
    fn lsd3_steady_state() {
        let p = paper();
        let s = wf_lsd_step(WfLsd::Lsd3, &p, PI / 2.0, 0.0, 0.01).unwrap();
        let expect = (PI / 2.0 + p.a * 0.01) / (1.0 + p.b / (PI / 2.0) * 0.01);
        assert!((s.value - expect).abs() < 1e-15);
        let x = (s.value / 2.0).sin().powi(2);
        assert!((x - 0.5).abs() < 1e-6, "{x}");
        assert!(!s.clamped);
    }

    #[test]
    fn lsd1_small_step_is_identity() {
        let p = paper();
        for y in [0.3, 1.0, 2.5] {
            let s = wf_lsd_step(WfLsd::Lsd1, &p, y, 0.0, 1e-12).unwrap();
            assert!((s.value - y).abs() <= 1e-6);
        }
    }

    #[test]
    fn lsd1_matches_cosine_solution() {
        let p = paper();
        let (y, dw, dt) = (1.1, 0.04, 0.01);
        let s = wf_lsd_step(WfLsd::Lsd1, &p, y, dw, dt).unwrap();
        let d = 1.0 + p.b / y * (y / 2.0).tan() * dt;
        let c = wf_cosine_solution((p.k3 * dw + y) / d, p.a / d, dt).unwrap();
        assert!(((s.value / 2.0).cos() - c).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn lsd2_vanishing_denominator() {
        // a cot(y/2) dt / y = 1 with b = 0 contribution negligible
        let p = WfParams::new(1.0, 2.0, 0.20101).unwrap();
        let y: f64 = 1.0;
        let dt = y / (p.a / (y / 2.0).tan() - p.b * (y / 2.0).tan());
        let err = wf_lsd_step(WfLsd::Lsd2, &p, y, 0.0, dt).unwrap_err();
        assert!(matches!(err, Error::StepSize { .. }), "{err}");
    }

    #[test]
    fn folding_keeps_sin_squared() {
        for y in [-0.4, 3.5, 7.0, -9.3] {
            let s = fold(y, false);
            assert!(s.clamped);
            assert!(s.value > 0.0 && s.value < PI);
            let before = (y / 2.0).sin().powi(2);
            let after = (s.value / 2.0).sin().powi(2);
            assert!((before - after).abs() < 1e-12);
        }
    }

    #[test]
    fn companion_examples() {
        let p = paper();
        let hyb = wf_companion_step(WfCompanion::Hyb, &p, 0.5, 0.0, 0.01, WfImplicitSign::Printed, settings()).unwrap();
        assert!((hyb.value - 0.5).abs() < 1e-7, "{}", hyb.value);
        let biss = wf_companion_step(WfCompanion::Biss, &p, 0.5, 0.0, 0.01, WfImplicitSign::Printed, settings()).unwrap();
        assert!((biss.value - 0.5).abs() < 1e-15);
        let sd = wf_companion_step(WfCompanion::Sd, &p, 0.5, 0.0, 0.01, WfImplicitSign::Printed, settings()).unwrap();
        assert!((sd.value - 0.5).abs() < 1e-7);
        assert!(!sd.clamped);
    }

    #[test]
    fn hyb_restriction_enforced() {
        // only reachable with hand-built parameters: validated ones always satisfy it
        let p = WfParams {
            k1: 0.1,
            k2: 2.0,
            k3: 1.0,
            a: -0.15,
            b: 1.65,
            beta: -1.5,
        };
        let err = wf_companion_step(WfCompanion::Hyb, &p, 0.5, 0.0, 0.01, WfImplicitSign::Printed, settings());
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn sd_clamps_and_flags() {
        let p = paper();
        // a coarse step overshoots the upper boundary from near zero
        let s = wf_companion_step(WfCompanion::Sd, &p, 0.01, 0.0, 2.0, WfImplicitSign::Printed, settings()).unwrap();
        assert!(s.clamped);
        assert!((0.0..=1.0).contains(&s.value));
    }

    #[test]
    fn implicit_round_trip_both_signs() {
        let p = paper();
        for sign in [WfImplicitSign::Printed, WfImplicitSign::Corrected] {
            for dt in [1e-2, 1e-3] {
                let hi = wf_implicit_upper(&p, sign, dt).unwrap();
                let g = |v: f64| wf_implicit_g(&p, sign, dt, v);
                let spec = MonotoneSpec {
                    g: &g,
                    dg: None,
                    lo: 0.0,
                    hi,
                    direction: Monotonicity::Increasing,
                    seed: hi / 2.0,
                };
                assert!(spec.is_monotone_on_samples(64));
                for u in [0.2, 1.0, PI / 2.0, 2.0] {
                    let v = invert_monotone(&spec, u, 1e-12, 100).unwrap();
                    assert!((g(v) - u).abs() <= 1e-12 * u.max(1.0));
                }
            }
        }
    }

    #[test]
    fn implicit_identity_limit() {
        let p = paper();
        for sign in [WfImplicitSign::Printed, WfImplicitSign::Corrected] {
            let s = wf_companion_step(WfCompanion::Implicit, &p, 0.3, 0.0, 1e-12, sign, settings()).unwrap();
            assert!((s.value - 0.3).abs() <= 1e-6);
        }
    }
}
