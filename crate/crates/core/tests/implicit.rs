mod common;

use common::*;
use lsd_core::schemes::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn residual_ok(g: f64, u: f64) -> bool {
    (g - u).abs() <= 1e-12 * u.abs().max(1.0)
}

fn any_dt() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1e-2), Just(1e-3)]
}

proptest! {
    #![proptest_config(cases(1_000))]

    #[test]
    fn cev_inversion(y in 0.01..3.0f64, dw in -0.2..0.2f64, dt in any_dt()) {
        let p = cev_paper();
        let u = y + p.k3 * (1.0 - p.q) * dw;
        let v = cev_implicit_solve(&p, dt, u, y, SolverSettings::default()).unwrap();
        prop_assert!(residual_ok(cev_implicit_g(&p, dt, v), u));
    }

    #[test]
    fn wf_inversion(y in 0.05..PI - 0.05, dw in -0.1..0.1f64, dt in any_dt()) {
        let p = wf_paper();
        let u = y + p.k3 * dw;
        let sign = WfImplicitSign::Corrected;
        let v = wf_implicit_solve(&p, sign, dt, u, y, SolverSettings::default()).unwrap();
        prop_assert!(residual_ok(wf_implicit_g(&p, sign, dt, v), u));
        // the printed map is only inverted where a preimage exists
        let sign = WfImplicitSign::Printed;
        if let Ok(v) = wf_implicit_solve(&p, sign, dt, u, y, SolverSettings::default()) {
            prop_assert!(residual_ok(wf_implicit_g(&p, sign, dt, v), u));
        }
    }

    #[test]
    fn ait_inversion(y in 0.1..3.0f64, dw in -0.2..0.2f64, dt in any_dt()) {
        let p = ait_paper();
        let u = y - p.big_k3 * dw;
        for variant in [AitCompanion::Implicit, AitCompanion::ImplicitDrift] {
            let v = ait_implicit_solve(&p, variant, dt, u, y, SolverSettings::default()).unwrap();
            prop_assert!(residual_ok(ait_implicit_g(&p, variant, dt, v), u), "{variant:?}");
        }
    }

    #[test]
    fn heston_root_matches_bisection(w in 0.05..5.0f64, dw in -0.2..0.2f64, dt in any_dt()) {
        let p = heston_paper();
        let u = w - p.k3 / 2.0 * dw;
        let closed = heston_implicit_solve(&p, dt, u);
        let g = |v: f64| heston_implicit_g(&p, dt, v);
        let spec = MonotoneSpec {
            g: &g,
            dg: None,
            lo: 0.0,
            hi: f64::INFINITY,
            direction: Monotonicity::Increasing,
            seed: w,
        };
        let bisected = invert_monotone(&spec, u, 1e-15, 400).unwrap();
        prop_assert!((closed - bisected).abs() <= 1e-12 * closed.max(1.0), "{closed} vs {bisected}");
    }
}

#[test]
fn implicit_maps_are_monotone_where_inverted() {
    let p = wf_paper();
    for dt in [1e-2, 1e-3] {
        for sign in [WfImplicitSign::Printed, WfImplicitSign::Corrected] {
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
            assert!(spec.is_monotone_on_samples(1_000), "{sign:?} at {dt}");
        }
    }
}
