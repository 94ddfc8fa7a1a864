use super::cir::check_exact_ou;
use super::{
    ait_companion_step, ait_lsd_step, cev_companion_step, cev_lsd_step, cir_companion_step,
    cir_exact_ou_step, cir_lsd_step, heston_companion_step, heston_lsd_step, wf_companion_step,
    wf_lsd_step, SchemeId, SolverSettings, StepState, WfCompanion, WfImplicitSign,
};
use crate::error::{Error, Result};
use crate::models::{hyb_admissible, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeOptions {
    /// Implicitness level of the theta semi-discrete schemes.
    pub theta: f64,
    pub wf_implicit_sign: WfImplicitSign,
    /// Share `m` of the initial value given to the first OU component.
    pub exact_split: f64,
    pub solver: SolverSettings,
}

impl Default for SchemeOptions {
    fn default() -> Self {
        Self {
            theta: 1.0,
            wf_implicit_sign: WfImplicitSign::Printed,
            exact_split: 0.5,
            solver: SolverSettings::default(),
        }
    }
}

/// A validated scheme bound to its model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme {
    id: SchemeId,
    params: ModelParams,
    opts: SchemeOptions,
}

impl Scheme {
    pub fn new(id: SchemeId, params: ModelParams, opts: SchemeOptions) -> Result<Self> {
        if id.model() != params.model() {
            return Err(Error::config(format!(
                "scheme {id} belongs to {} but parameters are for {}",
                id.model(),
                params.model()
            )));
        }
        if !(0.0..=1.0).contains(&opts.theta) {
            return Err(Error::config(format!("theta must lie in [0, 1], got {}", opts.theta)));
        }
        if !(opts.exact_split > 0.0 && opts.exact_split < 1.0) {
            return Err(Error::config(format!(
                "split m must lie in (0, 1), got {}",
                opts.exact_split
            )));
        }
        if !(opts.solver.tol > 0.0 && opts.solver.max_iter > 0) {
            return Err(Error::config("solver tolerance and iteration cap must be positive"));
        }
        match (id, &params) {
            (SchemeId::CirExactOu, ModelParams::Cir(p)) => check_exact_ou(p)?,
            (SchemeId::WfCompanion(WfCompanion::Hyb), ModelParams::Wf(p)) if !hyb_admissible(p) => {
                return Err(Error::config("HYB restriction on k1/k2 is violated"))
            }
            _ => {}
        }
        Ok(Self { id, params, opts })
    }

    pub fn id(&self) -> SchemeId {
        self.id
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn options(&self) -> &SchemeOptions {
        &self.opts
    }

    /// Initial state for `x0`; LSD schemes start from its Lamperti image.
    pub fn init(&self, x0: f64) -> Result<StepState> {
        let model = self.params.model();
        if !model.in_domain(x0) {
            return Err(Error::Domain {
                what: "x0",
                value: x0,
                domain: if model == crate::models::Model::Wf { "(0, 1)" } else { "(0, inf)" },
            });
        }
        if self.id.is_lsd() {
            return Ok(StepState::real(self.params.lamperti_forward(x0)?));
        }
        let mut s = StepState::real(x0);
        if self.id == SchemeId::CirExactOu {
            let m = self.opts.exact_split;
            s.aux = Some(((m * x0).sqrt(), ((1.0 - m) * x0).sqrt()));
        }
        Ok(s)
    }

    /// Advances `state` by `dt`. `dw2` drives the second OU component of the
    /// exact construction and is ignored otherwise.
    pub fn step(&self, state: &StepState, dw: f64, dw2: f64, dt: f64) -> Result<StepState> {
        let o = &self.opts;
        let x = state.value;
        let next = match (self.id, &self.params) {
            (SchemeId::CirLsd(v), ModelParams::Cir(p)) => StepState::real(cir_lsd_step(v, p, x, dw, dt)),
            (SchemeId::CirCompanion(v), ModelParams::Cir(p)) => {
                cir_companion_step(v, p, state, dw, dt, o.theta)
            }
            (SchemeId::CirExactOu, ModelParams::Cir(p)) => {
                let aux = state
                    .aux
                    .ok_or_else(|| Error::config("squared-OU state lacks its components"))?;
                let (x1, x2, x) = cir_exact_ou_step(p, aux, dw, dw2, dt)?;
                StepState {
                    aux: Some((x1, x2)),
                    ..StepState::real(x)
                }
            }
            (SchemeId::CevLsd(v), ModelParams::Cev(p)) => StepState::real(cev_lsd_step(v, p, x, dw, dt)),
            (SchemeId::CevCompanion(v), ModelParams::Cev(p)) => {
                cev_companion_step(v, p, state, dw, dt, o.theta, o.solver)?
            }
            (SchemeId::WfLsd(v), ModelParams::Wf(p)) => wf_lsd_step(v, p, x, dw, dt)?,
            (SchemeId::WfCompanion(v), ModelParams::Wf(p)) => {
                wf_companion_step(v, p, x, dw, dt, o.wf_implicit_sign, o.solver)?
            }
            (SchemeId::HestonLsd(v), ModelParams::Heston32(p)) => {
                StepState::real(heston_lsd_step(v, p, x, dw, dt))
            }
            (SchemeId::HestonCompanion(v), ModelParams::Heston32(p)) => {
                StepState::real(heston_companion_step(v, p, x, dw, dt))
            }
            (SchemeId::AitLsd(v), ModelParams::Ait(p)) => StepState::real(ait_lsd_step(v, p, x, dw, dt)),
            (SchemeId::AitCompanion(v), ModelParams::Ait(p)) => {
                StepState::real(ait_companion_step(v, p, x, dw, dt, o.solver)?)
            }
            _ => unreachable!("scheme and parameters are checked to match on construction"),
        };
        if !(next.value.is_finite() && next.imag.is_finite()) {
            return Err(Error::Numeric {
                context: "scheme output",
                value: next.value,
            });
        }
        Ok(next)
    }

    /// Original-space value of a state (real part for complex states).
    pub fn observe(&self, state: &StepState) -> f64 {
        if self.id.is_lsd() {
            self.params.lamperti_inverse_unchecked(state.value)
        } else {
            state.value
        }
    }
}
