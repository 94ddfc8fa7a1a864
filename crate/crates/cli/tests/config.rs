use lsd_cli::{ExperimentConfig, Kind};
use lsd_core::schemes::{CirLsd, WfImplicitSign};
use lsd_core::{Model, SchemeId};
use proptest::prelude::*;

const MINIMAL: &str = "\
[experiment]
kind = convergence

[model]
model = cir
k1 = 2
k2 = 2
k3 = 1

[numerics]
x0 = 4
T = 1
";

fn err(text: &str) -> String {
    ExperimentConfig::parse(text).unwrap_err().to_string()
}

#[test]
fn minimal_cir_convergence_config_gets_defaults() {
    let c = ExperimentConfig::parse(MINIMAL).unwrap();
    assert_eq!(c.kind, Kind::Convergence);
    assert_eq!(c.model, Model::Cir);
    assert_eq!(c.params["k3"], 1.0);
    assert_eq!(c.x0, 4.0);
    assert_eq!(c.paths, 1000);
    assert_eq!(c.theta, 1.0);
    assert_eq!(c.dt, (6..=11).map(|k| 2f64.powi(-k)).collect::<Vec<_>>());
    assert_eq!(c.ref_step, 2f64.powi(-14));
    assert_eq!(c.schemes.len(), 3);
    assert!(c.schemes.iter().all(|s| s.is_lsd()));
    assert_eq!(c.reference, None);
    assert_eq!(c.wf_implicit_sign, WfImplicitSign::Printed);
}

#[test]
fn scan_defaults_to_one_hundred_paths() {
    let c = ExperimentConfig::parse(&MINIMAL.replace("convergence", "scan")).unwrap();
    assert_eq!(c.paths, 100);
}

#[test]
fn empty_text_lacks_a_kind() {
    assert_eq!(err(""), "missing experiment kind");
    assert_eq!(err("# only a comment\n"), "missing experiment kind");
}

#[test]
fn duplicate_key_names_both_lines() {
    let text = MINIMAL.replace("k3 = 1\n", "k3 = 1\nk1 = 3\n");
    let e = err(&text);
    assert!(e.contains("duplicate key `k1`"), "{e}");
    assert!(e.contains("lines 6 and 9"), "{e}");
}

#[test]
fn unknown_key_reports_its_line() {
    let text = MINIMAL.replace("T = 1", "T = 1\nsteps = 10");
    let e = err(&text);
    assert!(e.starts_with("line 13, column 1: unknown key `steps`"), "{e}");
}

#[test]
fn keys_are_case_sensitive() {
    let e = err(&MINIMAL.replace("T = 1", "t = 1"));
    assert!(e.contains("unknown key `t`"), "{e}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = err("[experiment]\nkind convergence\n");
    assert!(e.starts_with("line 2, column 1:"), "{e}");
    let e = err("[experiment\n");
    assert!(e.starts_with("line 1,"), "{e}");
    let e = err("kind = scan\n");
    assert!(e.contains("before any [section]"), "{e}");
    let e = err("[results]\n");
    assert!(e.contains("unknown section"), "{e}");
}

#[test]
fn semantic_errors_name_the_key() {
    let e = err(&MINIMAL.replace("T = 1", "T = 1\nschemes = lsd1, hyb"));
    assert!(e.contains("key `schemes`"), "{e}");
    let e = err(&MINIMAL.replace("x0 = 4", "x0 = -4"));
    assert!(e.contains("key `x0`"), "{e}");
    let e = err(&MINIMAL.replace("T = 1", "T = 1\ndt = 0.1, -0.2"));
    assert!(e.contains("key `dt`"), "{e}");
    let e = err(&MINIMAL.replace("T = 1", "T = 1\ntheta = 2"));
    assert!(e.contains("key `theta`"), "{e}");
    let e = err(&MINIMAL.replace("k3 = 1", "k3 = 1\nq = 0.7"));
    assert!(e.contains("`q` is not a parameter of model cir"), "{e}");
    let e = err(&MINIMAL.replace("k3 = 1\n", ""));
    assert!(e.contains("missing parameter `k3`"), "{e}");
    let e = err(&MINIMAL.replace("k2 = 2", "k2 = two"));
    assert!(e.contains("line 7") && e.contains("`k2`"), "{e}");
    let e = err(&MINIMAL.replace("kind = convergence", "kind = sweep"));
    assert!(e.contains("unknown experiment kind `sweep`"), "{e}");
}

#[test]
fn invalid_model_parameters_are_rejected_at_parse_time() {
    let text = MINIMAL.replace("model = cir", "model = cev").replace("k3 = 1", "k3 = 1\nq = 1.5");
    let e = err(&text);
    assert!(e.contains("[model]"), "{e}");
}

#[test]
fn explicit_values_are_kept() {
    let text = "\
[experiment]
kind = scan
name = stress
seed = 99
output = results/scan

[model]
model = wf
k1 = 1
k2 = 2
k3 = 0.20101
wf_implicit_sign = corrected

[numerics]
schemes = lsd4, sd-alt, IMPLICIT
reference = lsd1
x0 = 0.5
T = 2
dt = 0.01, 0.001
ref_step = 0.0005
M = 50
theta = 0.5
m = 0.25
";
    let c = ExperimentConfig::parse(text).unwrap();
    assert_eq!(c.name, "stress");
    assert_eq!(c.seed, 99);
    assert_eq!(c.output, std::path::PathBuf::from("results/scan"));
    assert_eq!(c.wf_implicit_sign, WfImplicitSign::Corrected);
    assert_eq!(c.schemes.iter().map(|s| s.name()).collect::<Vec<_>>(), ["lsd4", "sd_alt", "implicit"]);
    assert_eq!((c.horizon, c.ref_step, c.paths, c.theta, c.m), (2.0, 0.0005, 50, 0.5, 0.25));
}

fn scheme_names(model: Model) -> Vec<&'static str> {
    SchemeId::all(model).into_iter().map(|s| s.name()).collect()
}

fn any_config() -> impl Strategy<Value = String> {
    let model = prop_oneof![
        Just(("cir", "k1 = 2\nk2 = 2\nk3 = 1\n", 4.0)),
        Just(("cev", "k1 = 0.0625\nk2 = 1\nk3 = 0.4\nq = 0.75\n", 0.0625)),
        Just(("wf", "k1 = 1\nk2 = 2\nk3 = 0.20101\n", 0.5)),
        Just(("heston32", "k1 = 0.1\nk2 = 70\nk3 = 0.4472135954999579\n", 1.0)),
        Just(("ait", "km1 = 2\nk0 = 3\nk1 = 4\nk2 = 6\nk3 = 1\nr = 2\nrho = 1.5\n", 4.0)),
    ];
    let kind = prop_oneof![
        Just("simulate"),
        Just("convergence"),
        Just("compare"),
        Just("exact-cir"),
        Just("scan")
    ];
    (model, kind, any::<u64>(), proptest::collection::vec(1e-5..0.5f64, 1..5), 0.0..=1.0f64, 0.01..0.99f64)
        .prop_flat_map(|(model, kind, seed, dts, theta, m)| {
            let names = scheme_names(model.0.parse().unwrap());
            let schemes = proptest::sample::subsequence(names, 1..=3);
            (Just((model, kind, seed, dts, theta, m)), schemes, proptest::option::of(2usize..5000))
        })
        .prop_map(|((model, kind, seed, dts, theta, m), schemes, paths)| {
            let dt: Vec<String> = dts.iter().map(|d| d.to_string()).collect();
            let mut text = format!(
                "[experiment]\nkind = {kind}\nseed = {seed}\n[model]\nmodel = {}\n{}[numerics]\nschemes = {}\nx0 = {}\nT = 1\ndt = {}\ntheta = {theta}\nm = {m}\n",
                model.0,
                model.1,
                schemes.join(", "),
                model.2,
                dt.join(", ")
            );
            if let Some(p) = paths {
                text.push_str(&format!("M = {p}\n"));
            }
            text
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn printing_and_reparsing_gives_an_equal_config(text in any_config()) {
        let parsed = ExperimentConfig::parse(&text).unwrap();
        let printed = parsed.to_string();
        let reparsed = ExperimentConfig::parse(&printed).unwrap();
        prop_assert_eq!(&parsed, &reparsed, "{}", printed);
    }
}

#[test]
fn printed_minimal_config_lists_every_default() {
    let printed = ExperimentConfig::parse(MINIMAL).unwrap().to_string();
    for key in ["name = convergence", "seed = 1", "M = 1000", "theta = 1", "ref_step = 0.00006103515625"] {
        assert!(printed.contains(key), "{key} missing from\n{printed}");
    }
    assert!(printed.contains(&format!("schemes = {}", SchemeId::CirLsd(CirLsd::Lsd1))));
}
