//! INI-style experiment configuration.
//!
//! ```text
//! [experiment]
//! kind = convergence
//! name = cir_lsd
//! seed = 7
//!
//! [model]
//! model = cir
//! k1 = 2
//! k2 = 2
//! k3 = 1
//!
//! [numerics]
//! schemes = lsd1, lsd2, lsd3
//! x0 = 4
//! T = 1
//! dt = 0.015625, 0.0078125
//! ```
//!
//! Lines starting with `#` or `;` are comments. Keys are case-sensitive and
//! may appear at most once per section.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use lsd_core::models::{AitParams, CevParams, CirParams, Heston32Params, WfParams};
use lsd_core::schemes::WfImplicitSign;
use lsd_core::{Model, ModelParams, SchemeId};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Simulate,
    Convergence,
    Compare,
    ExactCir,
    Scan,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Simulate => "simulate",
            Kind::Convergence => "convergence",
            Kind::Compare => "compare",
            Kind::ExactCir => "exact-cir",
            Kind::Scan => "scan",
        }
    }

    fn default_paths(self) -> usize {
        match self {
            Kind::Convergence => 1000,
            _ => 100,
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "simulate" => Kind::Simulate,
            "convergence" => Kind::Convergence,
            "compare" => Kind::Compare,
            "exact-cir" | "exact_cir" => Kind::ExactCir,
            "scan" => Kind::Scan,
            _ => {
                return Err(format!(
                    "unknown experiment kind `{s}` (expected simulate, convergence, compare, exact-cir or scan)"
                ))
            }
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub name: String,
    pub seed: u64,
    /// Directory receiving `<name>.csv` and `<name>.json`.
    pub output: PathBuf,
    pub model: Model,
    /// Raw model coefficients by name, e.g. `k1`, `q`, `rho`.
    pub params: BTreeMap<String, f64>,
    pub wf_implicit_sign: WfImplicitSign,
    pub schemes: Vec<SchemeId>,
    /// Reference scheme of convergence runs; each scheme is its own reference when absent.
    pub reference: Option<SchemeId>,
    pub x0: f64,
    pub horizon: f64,
    pub dt: Vec<f64>,
    pub ref_step: f64,
    pub paths: usize,
    pub theta: f64,
    /// Initial split of the squared-OU construction.
    pub m: f64,
}

/// Coefficient names required by each model, in printing order.
pub fn param_names(model: Model) -> &'static [&'static str] {
    match model {
        Model::Cir | Model::Wf | Model::Heston32 => &["k1", "k2", "k3"],
        Model::Cev => &["k1", "k2", "k3", "q"],
        Model::Ait => &["km1", "k0", "k1", "k2", "k3", "r", "rho"],
    }
}

/// Exponents `k` of the default step sizes `T 2^-k`.
const DEFAULT_LADDER: std::ops::RangeInclusive<i32> = 6..=11;

const EXPERIMENT_KEYS: &[&str] = &["kind", "name", "seed", "output"];
const MODEL_KEYS: &[&str] = &["model", "wf_implicit_sign", "km1", "k0", "k1", "k2", "k3", "q", "r", "rho"];
const NUMERICS_KEYS: &[&str] = &["schemes", "reference", "x0", "T", "dt", "ref_step", "M", "theta", "m"];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    /// 1-based column of the value.
    column: usize,
}

type Sections = BTreeMap<&'static str, BTreeMap<String, Entry>>;

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let sections = tokenize(text)?;
        let get = Lookup { sections: &sections };

        let kind_entry = get
            .entry("experiment", "kind")
            .ok_or_else(|| ConfigError::new("missing experiment kind"))?;
        let kind: Kind = kind_entry
            .value
            .parse()
            .map_err(|e: String| ConfigError::at(kind_entry.line, kind_entry.column, e))?;
        let name = get.entry("experiment", "name").map_or_else(|| kind.name().to_string(), |e| e.value.clone());
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(get.semantic("experiment", "name", "must be a non-empty file stem"));
        }
        let seed = get.parsed("experiment", "seed")?.unwrap_or(1);
        let output = get
            .entry("experiment", "output")
            .map_or_else(|| PathBuf::from("."), |e| PathBuf::from(&e.value));

        let model_entry = get
            .entry("model", "model")
            .ok_or_else(|| ConfigError::new("missing key `model` in [model]"))?;
        let model: Model = model_entry
            .value
            .parse()
            .map_err(|e: lsd_core::Error| ConfigError::at(model_entry.line, model_entry.column, e.to_string()))?;
        let names = param_names(model);
        let mut params = BTreeMap::new();
        for (key, entry) in &sections["model"] {
            if key == "model" || key == "wf_implicit_sign" {
                continue;
            }
            if !names.contains(&key.as_str()) {
                return Err(ConfigError::at(
                    entry.line,
                    1,
                    format!("key `{key}` is not a parameter of model {model}"),
                ));
            }
            params.insert(key.clone(), get.parsed::<f64>("model", key)?.expect("present"));
        }
        if let Some(missing) = names.iter().find(|n| !params.contains_key(**n)) {
            return Err(ConfigError::new(format!("missing parameter `{missing}` for model {model}")));
        }
        let wf_implicit_sign = match get.entry("model", "wf_implicit_sign") {
            None => WfImplicitSign::default(),
            Some(e) => match e.value.as_str() {
                "printed" => WfImplicitSign::Printed,
                "corrected" => WfImplicitSign::Corrected,
                other => {
                    return Err(ConfigError::at(
                        e.line,
                        e.column,
                        format!("wf_implicit_sign must be `printed` or `corrected`, got `{other}`"),
                    ))
                }
            },
        };

        let schemes = match get.entry("numerics", "schemes") {
            None => SchemeId::all(model).into_iter().filter(|s| s.is_lsd()).collect(),
            Some(e) => split_list(&e.value)
                .map(|s| SchemeId::parse(model, s).map_err(|err| get.semantic("numerics", "schemes", err)))
                .collect::<Result<Vec<_>, _>>()?,
        };
        if schemes.is_empty() {
            return Err(get.semantic("numerics", "schemes", "list is empty"));
        }
        let reference = match get.entry("numerics", "reference") {
            None => None,
            Some(e) => Some(
                SchemeId::parse(model, &e.value).map_err(|err| get.semantic("numerics", "reference", err))?,
            ),
        };
        let x0 = get.required("numerics", "x0")?;
        if !model.in_domain(x0) {
            return Err(get.semantic("numerics", "x0", format!("{x0} is outside the domain of {model}")));
        }
        let horizon: f64 = get.required("numerics", "T")?;
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(get.semantic("numerics", "T", "must be positive"));
        }
        let dt = match get.entry("numerics", "dt") {
            None => DEFAULT_LADDER.map(|k| horizon * 2f64.powi(-k)).collect(),
            Some(e) => split_list(&e.value)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| get.semantic("numerics", "dt", format!("`{s}` is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if dt.is_empty() || dt.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(get.semantic("numerics", "dt", "needs one or more positive step sizes"));
        }
        let finest = dt.iter().cloned().fold(f64::INFINITY, f64::min);
        let ref_step = get.parsed("numerics", "ref_step")?.unwrap_or(finest / 8.0);
        if !(ref_step > 0.0 && ref_step <= finest) {
            return Err(get.semantic("numerics", "ref_step", "must be positive and no larger than every dt"));
        }
        let paths = get.parsed("numerics", "M")?.unwrap_or(kind.default_paths());
        if paths < 2 {
            return Err(get.semantic("numerics", "M", "needs at least 2 paths"));
        }
        let theta = get.parsed("numerics", "theta")?.unwrap_or(1.0);
        if !(0.0..=1.0).contains(&theta) {
            return Err(get.semantic("numerics", "theta", "must lie in [0, 1]"));
        }
        let m = get.parsed("numerics", "m")?.unwrap_or(0.5);
        if !(m > 0.0 && m < 1.0) {
            return Err(get.semantic("numerics", "m", "must lie in (0, 1)"));
        }

        let config = Self {
            kind,
            name,
            seed,
            output,
            model,
            params,
            wf_implicit_sign,
            schemes,
            reference,
            x0,
            horizon,
            dt,
            ref_step,
            paths,
            theta,
            m,
        };
        // surface parameter errors (e.g. q outside (1/2, 1)) at parse time
        config
            .model_params()
            .map_err(|e| ConfigError::new(format!("[model]: {e}")))?;
        Ok(config)
    }

    /// Validated model parameters.
    pub fn model_params(&self) -> lsd_core::Result<ModelParams> {
        let p = |k: &str| self.params[k];
        Ok(match self.model {
            Model::Cir => ModelParams::Cir(CirParams::new(p("k1"), p("k2"), p("k3"))?),
            Model::Cev => ModelParams::Cev(CevParams::new(p("k1"), p("k2"), p("k3"), p("q"))?),
            Model::Wf => ModelParams::Wf(WfParams::new(p("k1"), p("k2"), p("k3"))?),
            Model::Heston32 => ModelParams::Heston32(Heston32Params::new(p("k1"), p("k2"), p("k3"))?),
            Model::Ait => ModelParams::Ait(AitParams::new(
                p("km1"),
                p("k0"),
                p("k1"),
                p("k2"),
                p("k3"),
                p("r"),
                p("rho"),
            )?),
        })
    }
}

/// Prints every key, defaults included, so that parsing the output yields an
/// equal configuration.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: Vec<String>| items.join(", ");
        writeln!(f, "[experiment]")?;
        writeln!(f, "kind = {}", self.kind)?;
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "output = {}", self.output.display())?;
        writeln!(f)?;
        writeln!(f, "[model]")?;
        writeln!(f, "model = {}", self.model)?;
        for name in param_names(self.model) {
            writeln!(f, "{name} = {}", self.params[*name])?;
        }
        let sign = match self.wf_implicit_sign {
            WfImplicitSign::Printed => "printed",
            WfImplicitSign::Corrected => "corrected",
        };
        writeln!(f, "wf_implicit_sign = {sign}")?;
        writeln!(f)?;
        writeln!(f, "[numerics]")?;
        writeln!(f, "schemes = {}", join(self.schemes.iter().map(|s| s.to_string()).collect()))?;
        if let Some(r) = self.reference {
            writeln!(f, "reference = {r}")?;
        }
        writeln!(f, "x0 = {}", self.x0)?;
        writeln!(f, "T = {}", self.horizon)?;
        writeln!(f, "dt = {}", join(self.dt.iter().map(|d| d.to_string()).collect()))?;
        writeln!(f, "ref_step = {}", self.ref_step)?;
        writeln!(f, "M = {}", self.paths)?;
        writeln!(f, "theta = {}", self.theta)?;
        writeln!(f, "m = {}", self.m)
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn tokenize(text: &str) -> Result<Sections, ConfigError> {
    let mut sections: Sections = BTreeMap::new();
    for s in ["experiment", "model", "numerics"] {
        sections.insert(s, BTreeMap::new());
    }
    let mut current: Option<&'static str> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(';') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::at(line, indent + trimmed.len(), "expected `]` to close the section header"))?
                .trim();
            current = Some(match name {
                "experiment" => "experiment",
                "model" => "model",
                "numerics" => "numerics",
                _ => {
                    return Err(ConfigError::at(
                        line,
                        indent + 2,
                        format!("unknown section [{name}] (expected experiment, model or numerics)"),
                    ))
                }
            });
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(ConfigError::at(line, indent + 1, "expected `key = value`"));
        };
        let key = raw[..eq].trim();
        if key.is_empty() {
            return Err(ConfigError::at(line, eq + 1, "missing key before `=`"));
        }
        let value_part = &raw[eq + 1..];
        let value = value_part.trim();
        let column = eq + 2 + (value_part.len() - value_part.trim_start().len());
        let Some(section) = current else {
            return Err(ConfigError::at(line, indent + 1, format!("key `{key}` appears before any [section]")));
        };
        let allowed = match section {
            "experiment" => EXPERIMENT_KEYS,
            "model" => MODEL_KEYS,
            _ => NUMERICS_KEYS,
        };
        if !allowed.contains(&key) {
            return Err(ConfigError::at(line, indent + 1, format!("unknown key `{key}` in [{section}]")));
        }
        let entries = sections.get_mut(section).expect("known section");
        if let Some(first) = entries.get(key) {
            return Err(ConfigError::at(
                line,
                indent + 1,
                format!("duplicate key `{key}` in [{section}] (lines {} and {line})", first.line),
            ));
        }
        entries.insert(
            key.to_string(),
            Entry {
                value: value.to_string(),
                line,
                column,
            },
        );
    }
    Ok(sections)
}

struct Lookup<'a> {
    sections: &'a Sections,
}

impl<'a> Lookup<'a> {
    fn entry(&self, section: &str, key: &str) -> Option<&'a Entry> {
        self.sections.get(section).and_then(|s| s.get(key))
    }

    fn parsed<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError> {
        match self.entry(section, key) {
            None => Ok(None),
            Some(e) => e.value.parse().map(Some).map_err(|_| {
                ConfigError::at(e.line, e.column, format!("cannot parse value `{}` of key `{key}`", e.value))
            }),
        }
    }

    fn required<T: FromStr>(&self, section: &str, key: &str) -> Result<T, ConfigError> {
        self.parsed(section, key)?
            .ok_or_else(|| ConfigError::new(format!("missing key `{key}` in [{section}]")))
    }

    fn semantic(&self, section: &str, key: &str, msg: impl fmt::Display) -> ConfigError {
        match self.entry(section, key) {
            Some(e) => ConfigError::at(e.line, e.column, format!("key `{key}`: {msg}")),
            None => ConfigError::new(format!("key `{key}`: {msg}")),
        }
    }
}
