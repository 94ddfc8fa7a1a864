#![allow(dead_code)]

use lsd_core::models::*;
use lsd_core::{Scheme, SchemeId, SchemeOptions};

pub fn cir_paper() -> CirParams {
    CirParams::new(2.0, 2.0, 1.0).unwrap()
}

pub fn cev_paper() -> CevParams {
    CevParams::new(1.0 / 16.0, 1.0, 0.4, 0.75).unwrap()
}

pub fn wf_paper() -> WfParams {
    WfParams::new(1.0, 2.0, 0.20101).unwrap()
}

pub fn heston_paper() -> Heston32Params {
    Heston32Params::new(0.1, 70.0, 0.2f64.sqrt()).unwrap()
}

pub fn ait_paper() -> AitParams {
    AitParams::new(2.0, 3.0, 4.0, 6.0, 1.0, 2.0, 1.5).unwrap()
}

/// Paper parameters and initial value for every model.
pub fn paper_setups() -> Vec<(ModelParams, f64)> {
    vec![
        (ModelParams::Cir(cir_paper()), 4.0),
        (ModelParams::Cev(cev_paper()), 1.0 / 16.0),
        (ModelParams::Wf(wf_paper()), 0.5),
        (ModelParams::Heston32(heston_paper()), 1.0),
        (ModelParams::Ait(ait_paper()), 4.0),
    ]
}

pub fn scheme(id: SchemeId, params: ModelParams) -> Scheme {
    Scheme::new(id, params, SchemeOptions::default()).unwrap()
}

pub fn lsd_schemes(params: ModelParams) -> Vec<Scheme> {
    SchemeId::all(params.model())
        .into_iter()
        .filter(|id| id.is_lsd())
        .map(|id| scheme(id, params))
        .collect()
}

/// Distance in units in the last place between two finite doubles of one sign.
pub fn ulps(a: f64, b: f64) -> u64 {
    assert!(a.is_finite() && b.is_finite() && (a >= 0.0) == (b >= 0.0), "{a} vs {b}");
    a.to_bits().abs_diff(b.to_bits())
}

/// Property-test settings without on-disk failure persistence, which has no
/// source file to anchor to in integration tests.
pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        ..Default::default()
    }
}
