//! One-step maps for every scheme, in Lamperti space (LSD family) and in the
//! original state space (companion schemes).

mod ait;
mod cev;
mod cir;
mod heston;
mod id;
mod scheme;
pub mod solver;
mod wf;

use num_complex::Complex64;

pub use ait::{ait_companion_step, ait_implicit_g, ait_implicit_solve, ait_lsd_step, AitCompanion, AitLsd};
pub use cev::{cev_companion_step, cev_implicit_g, cev_implicit_solve, cev_lsd_step, CevCompanion, CevLsd};
pub use cir::{cir_companion_step, cir_exact_ou_step, cir_lsd_step, CirCompanion, CirLsd};
pub use heston::{
    heston_companion_step, heston_implicit_g, heston_implicit_solve, heston_lsd_step, HestonCompanion, HestonLsd,
};
pub use id::SchemeId;
pub use scheme::{Scheme, SchemeOptions};
pub use solver::{invert_monotone, Monotonicity, MonotoneSpec, SolverSettings};
pub use wf::{
    wf_companion_step, wf_implicit_g, wf_implicit_solve, wf_implicit_upper, wf_lsd_step, WfCompanion,
    WfImplicitSign, WfLsd,
};

/// State carried between steps.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepState {
    /// Lamperti-space value for LSD variants, original-space value otherwise.
    /// For complex-capable variants this is the real part.
    pub value: f64,
    pub imag: f64,
    /// `(x1, x2)` of the squared-OU construction.
    pub aux: Option<(f64, f64)>,
    /// Set when this step met a negative radicand or a non-real state.
    pub non_real: bool,
    /// Set when this step clamped or folded a value back into its domain.
    pub clamped: bool,
}

impl StepState {
    pub fn real(value: f64) -> Self {
        Self {
            value,
            ..Self::default()
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.value, self.imag)
    }

    pub fn is_real(&self) -> bool {
        self.imag == 0.0
    }
}

/// Positive root of `a v^2 - phi v - c = 0` for `a > 0`, `c > 0`, avoiding
/// cancellation when `phi < 0`.
#[inline]
pub(crate) fn positive_root(a: f64, phi: f64, c: f64) -> f64 {
    let s = (phi * phi + 4.0 * a * c).sqrt();
    if phi >= 0.0 {
        (phi + s) / (2.0 * a)
    } else {
        2.0 * c / (s - phi)
    }
}

/// Square root that stays in `f64` for a real, non-negative argument and
/// reports whether the complex branch was needed.
#[inline]
pub(crate) fn csqrt(z: Complex64) -> (Complex64, bool) {
    if z.im == 0.0 && z.re >= 0.0 {
        (Complex64::new(z.re.sqrt(), 0.0), false)
    } else {
        (z.sqrt(), true)
    }
}
