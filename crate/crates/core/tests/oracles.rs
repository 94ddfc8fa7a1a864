//! Closed forms checked against classical RK4 integration with step dt/10^4.

mod common;

use common::cases;
use lsd_core::closedform::{bernoulli_solution, wf_cosine_solution, BernoulliCoeffs};
use proptest::prelude::*;
use std::f64::consts::PI;

const RK4_STEPS: usize = 10_000;

fn rk4(f: impl Fn(f64) -> f64, y0: f64, t: f64) -> f64 {
    let h = t / RK4_STEPS as f64;
    let mut y = y0;
    for _ in 0..RK4_STEPS {
        let k1 = f(y);
        let k2 = f(y + h / 2.0 * k1);
        let k3 = f(y + h / 2.0 * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

proptest! {
    #![proptest_config(cases(1_000))]

    #[test]
    fn bernoulli_matches_integration(
        a in 0.2..5.0f64,
        b in 0.0..3.0f64,
        c in -3.0..3.0f64,
        l in 0.1..3.0f64,
        dt in 1e-3..0.5f64,
    ) {
        let closed = bernoulli_solution(&BernoulliCoeffs { a, b, c, l, dt }).unwrap();
        let y = rk4(|y| b * y.powf(-l) + c * y, a, dt);
        let numeric = y.powf(1.0 + l);
        prop_assert!((closed - numeric).abs() <= 1e-8 * numeric.abs(), "{closed} vs {numeric}");
    }

    #[test]
    fn wf_cosine_matches_integration(a in 0.1..PI - 0.1, rate in 0.0..3.0f64, dt in 1e-3..0.5f64) {
        let closed = wf_cosine_solution(a, rate, dt).unwrap();
        let y = rk4(|y| rate / (y / 2.0).tan(), a, dt);
        let numeric = (y / 2.0).cos().abs();
        prop_assert!((closed - numeric).abs() <= 1e-8 * numeric, "{closed} vs {numeric}");
    }
}

#[test]
fn bernoulli_is_continuous_as_the_linear_coefficient_vanishes() {
    let base = BernoulliCoeffs { a: 1.7, b: 0.6, c: 0.0, l: 1.0, dt: 0.3 };
    let near = BernoulliCoeffs { c: 1e-13, ..base };
    let diff = bernoulli_solution(&near).unwrap() - bernoulli_solution(&base).unwrap();
    assert!(diff.abs() <= 1e-8);
}
