//! Model parameters, Lamperti transforms and domain predicates.
//!
//! Each model is a scalar SDE `dx = f(x) dt + g(x) dW` whose Lamperti
//! transform `z = F(x)` has constant diffusion. Parameter structs carry the
//! SDE coefficients together with the derived Lamperti-space coefficients used
//! by the schemes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Cir,
    Cev,
    Wf,
    Heston32,
    Ait,
}

impl Model {
    pub const ALL: [Model; 5] = [Model::Cir, Model::Cev, Model::Wf, Model::Heston32, Model::Ait];

    pub fn name(self) -> &'static str {
        match self {
            Model::Cir => "cir",
            Model::Cev => "cev",
            Model::Wf => "wf",
            Model::Heston32 => "heston32",
            Model::Ait => "ait",
        }
    }

    /// Whether `x` lies in the open state domain of the model.
    pub fn in_domain(self, x: f64) -> bool {
        match self {
            Model::Wf => x > 0.0 && x < 1.0,
            _ => x > 0.0 && x.is_finite(),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cir" => Ok(Model::Cir),
            "cev" => Ok(Model::Cev),
            "wf" | "wright-fisher" | "wright_fisher" => Ok(Model::Wf),
            "heston32" | "heston" | "heston3/2" => Ok(Model::Heston32),
            "ait" | "ait-sahalia" | "ait_sahalia" => Ok(Model::Ait),
            other => Err(Error::config(format!("unknown model '{other}'"))),
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::config(format!("{name} must be positive and finite, got {v}")))
    }
}

/// `dx = (k1 - k2 x) dt + k3 sqrt(x) dW`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[non_exhaustive]
pub struct CirParams {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// `2 k1 / k3^2`
    pub a: f64,
    /// `k2 / 2 + k3^2 / 8`
    pub b: f64,
}

impl CirParams {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let (k1, k2, k3) = (positive("k1", k1)?, positive("k2", k2)?, positive("k3", k3)?);
        Ok(Self {
            k1,
            k2,
            k3,
            a: 2.0 * k1 / (k3 * k3),
            b: k2 / 2.0 + k3 * k3 / 8.0,
        })
    }

    /// Dimension `4 k1 / k3^2` of the associated squared Bessel process.
    pub fn dimension(&self) -> f64 {
        4.0 * self.k1 / (self.k3 * self.k3)
    }
}

/// `dx = (k1 - k2 x) dt + k3 x^q dW` with `1/2 < q < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[non_exhaustive]
pub struct CevParams {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub q: f64,
    /// `k1 k3^((1-2q)/(1-q)) (1-q)^(-q/(1-q))`
    pub a: f64,
    /// `q / (2 - 2q)`
    pub b: f64,
    /// `k2 (1 - q)`
    pub c: f64,
}

impl CevParams {
    pub fn new(k1: f64, k2: f64, k3: f64, q: f64) -> Result<Self> {
        let (k1, k2, k3) = (positive("k1", k1)?, positive("k2", k2)?, positive("k3", k3)?);
        if !(q > 0.5 && q < 1.0) {
            return Err(Error::config(format!("q must lie in (1/2, 1), got {q}")));
        }
        let p = 1.0 - q;
        Ok(Self {
            k1,
            k2,
            k3,
            q,
            a: k1 * k3.powf((1.0 - 2.0 * q) / p) * p.powf(-q / p),
            b: q / (2.0 - 2.0 * q),
            c: k2 * p,
        })
    }
}

/// Wright-Fisher diffusion `dx = (k1 - k2 x) dt + k3 sqrt(x (1 - x)) dW`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[non_exhaustive]
pub struct WfParams {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// `k1 - k3^2 / 4`
    pub a: f64,
    /// `k2 - k1 - k3^2 / 4`
    pub b: f64,
    /// `k3^2 / 2 - k2`
    pub beta: f64,
}

impl WfParams {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let (k1, k2, k3) = (positive("k1", k1)?, positive("k2", k2)?, positive("k3", k3)?);
        let s = k3 * k3;
        let a = k1 - s / 4.0;
        let b = k2 - k1 - s / 4.0;
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::config(format!(
                "Wright-Fisher requires k1 - k3^2/4 > 0 and k2 - k1 - k3^2/4 > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self {
            k1,
            k2,
            k3,
            a,
            b,
            beta: s / 2.0 - k2,
        })
    }
}

/// Heston 3/2 variance `dx = (k1 x - k2 x^2) dt + k3 x^(3/2) dW`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[non_exhaustive]
pub struct Heston32Params {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// `4 k2 / k3^2 + 6`, the `t`-coefficient of the squared LSD updates.
    pub c_star: f64,
    /// `k2 / 2 + 3 k3^2 / 8`, used by the implicit scheme.
    pub c_impl: f64,
}

impl Heston32Params {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let (k1, k2, k3) = (positive("k1", k1)?, positive("k2", k2)?, positive("k3", k3)?);
        Ok(Self {
            k1,
            k2,
            k3,
            c_star: 4.0 * k2 / (k3 * k3) + 6.0,
            c_impl: k2 / 2.0 + 3.0 * k3 * k3 / 8.0,
        })
    }
}

/// Ait-Sahalia `dx = (k_{-1}/x - k0 + k1 x - k2 x^r) dt + k3 x^rho dW`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[non_exhaustive]
pub struct AitParams {
    pub km1: f64,
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub r: f64,
    pub rho: f64,
    /// `k_{-1} (rho - 1)`
    pub big_km1: f64,
    pub big_k0: f64,
    pub big_k1: f64,
    pub big_k2: f64,
    pub big_k3: f64,
    /// `rho (rho - 1) k3^2 / 2`
    pub big_k4: f64,
    /// `(rho + 1) / (rho - 1)`
    pub e1: f64,
    /// `rho / (rho - 1)`
    pub e2: f64,
    /// `(2 rho - r - 1) / (rho - 1)`
    pub e3: f64,
    /// `2 / (rho - 1)`
    pub e4: f64,
    /// `(rho - r) / (rho - 1)`
    pub e5: f64,
}

impl AitParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(km1: f64, k0: f64, k1: f64, k2: f64, k3: f64, r: f64, rho: f64) -> Result<Self> {
        let km1 = positive("k-1", km1)?;
        let (k0, k1, k2, k3) = (
            positive("k0", k0)?,
            positive("k1", k1)?,
            positive("k2", k2)?,
            positive("k3", k3)?,
        );
        if !(r.is_finite() && r > 1.0) {
            return Err(Error::config(format!("r must exceed 1, got {r}")));
        }
        if !(rho.is_finite() && rho > 1.0) {
            return Err(Error::config(format!("rho must exceed 1, got {rho}")));
        }
        let s = rho - 1.0;
        Ok(Self {
            km1,
            k0,
            k1,
            k2,
            k3,
            r,
            rho,
            big_km1: km1 * s,
            big_k0: k0 * s,
            big_k1: k1 * s,
            big_k2: k2 * s,
            big_k3: k3 * s,
            big_k4: rho * s * k3 * k3 / 2.0,
            e1: (rho + 1.0) / s,
            e2: rho / s,
            e3: (2.0 * rho - r - 1.0) / s,
            e4: 2.0 / s,
            e5: (rho - r) / s,
        })
    }
}

/// `x^e` with `x^0 = 1` for every `x`, including the `r = 2 rho - 1` edge.
#[inline]
pub(crate) fn pow0(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams {
    Cir(CirParams),
    Cev(CevParams),
    Wf(WfParams),
    Heston32(Heston32Params),
    Ait(AitParams),
}

impl ModelParams {
    pub fn model(&self) -> Model {
        match self {
            ModelParams::Cir(_) => Model::Cir,
            ModelParams::Cev(_) => Model::Cev,
            ModelParams::Wf(_) => Model::Wf,
            ModelParams::Heston32(_) => Model::Heston32,
            ModelParams::Ait(_) => Model::Ait,
        }
    }

    /// Lamperti transform `z = F(x)`; strictly increasing for CIR, CEV and WF,
    /// strictly decreasing for Heston 3/2 and Ait-Sahalia.
    pub fn lamperti_forward(&self, x: f64) -> Result<f64> {
        let model = self.model();
        if !model.in_domain(x) {
            return Err(Error::Domain {
                what: "x",
                value: x,
                domain: if model == Model::Wf { "(0, 1)" } else { "(0, inf)" },
            });
        }
        Ok(match self {
            ModelParams::Cir(p) => 2.0 / p.k3 * x.sqrt(),
            ModelParams::Cev(p) => x.powf(1.0 - p.q) / (p.k3 * (1.0 - p.q)),
            ModelParams::Wf(_) => 2.0 * x.sqrt().asin(),
            ModelParams::Heston32(p) => 2.0 / (p.k3 * x.sqrt()),
            ModelParams::Ait(p) => x.powf(1.0 - p.rho),
        })
    }

    /// Inverse of [`lamperti_forward`](Self::lamperti_forward).
    pub fn lamperti_inverse(&self, z: f64) -> Result<f64> {
        let ok = match self {
            ModelParams::Wf(_) => z > 0.0 && z < PI,
            _ => z > 0.0 && z.is_finite(),
        };
        if !ok {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: if self.model() == Model::Wf { "(0, pi)" } else { "(0, inf)" },
            });
        }
        Ok(self.lamperti_inverse_unchecked(z))
    }

    /// Inverse map without range checks, used on scheme outputs whose range
    /// is guaranteed by construction.
    pub(crate) fn lamperti_inverse_unchecked(&self, z: f64) -> f64 {
        match self {
            ModelParams::Cir(p) => p.k3 * p.k3 * z * z / 4.0,
            ModelParams::Cev(p) => (p.k3 * (1.0 - p.q) * z).powf(1.0 / (1.0 - p.q)),
            ModelParams::Wf(_) => {
                let s = (z / 2.0).sin();
                s * s
            }
            ModelParams::Heston32(p) => 4.0 / (p.k3 * p.k3 * z * z),
            ModelParams::Ait(p) => z.powf(1.0 / (1.0 - p.rho)),
        }
    }

    pub fn domain_report(&self) -> DomainReport {
        let mut report = DomainReport {
            model: self.model(),
            feller: None,
            exact_ou_available: None,
            wf_boundary_unattainable: None,
            hyb_admissible: None,
        };
        match self {
            ModelParams::Cir(p) => {
                report.feller = Some(p.k3 * p.k3 <= 2.0 * p.k1);
                report.exact_ou_available = Some((p.dimension() - 2.0).abs() <= EXACT_OU_TOL);
            }
            ModelParams::Wf(p) => {
                let s = p.k3 * p.k3;
                report.wf_boundary_unattainable =
                    Some(2.0 * p.k1 >= s && 2.0 * (p.k2 - p.k1) >= s);
                report.hyb_admissible = Some(hyb_admissible(p));
            }
            _ => {}
        }
        report
    }
}

/// Tolerance on `4 k1 / k3^2 = 2` for the squared-OU construction.
pub const EXACT_OU_TOL: f64 = 1e-12;

pub(crate) fn hyb_admissible(p: &WfParams) -> bool {
    let ratio = p.k1 / p.k2;
    let edge = p.k3 * p.k3 / (4.0 * p.k2);
    ratio > edge && ratio < 1.0 - edge
}

/// Informational flags about boundary behavior; schemes run regardless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainReport {
    pub model: Model,
    /// CIR: `k3^2 <= 2 k1`.
    pub feller: Option<bool>,
    /// CIR: `4 k1 / k3^2 = 2`, so the squared-OU construction applies.
    pub exact_ou_available: Option<bool>,
    /// WF: `2 k1 >= k3^2` and `2 (k2 - k1) >= k3^2`.
    pub wf_boundary_unattainable: Option<bool>,
    /// WF: `k1/k2` strictly inside `(k3^2/(4 k2), 1 - k3^2/(4 k2))`.
    pub hyb_admissible: Option<bool>,
}
