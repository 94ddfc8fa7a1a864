//! Lamperti semi-discrete schemes for scalar SDEs on positive or bounded
//! domains, the competitor schemes they are compared against, and the
//! Monte-Carlo experiments used to measure them.

pub mod closedform;
pub mod error;
pub mod experiments;
pub mod models;
pub mod schemes;
pub mod wiener;

pub use error::{Error, Result};
pub use models::{AitParams, CevParams, CirParams, Heston32Params, Model, ModelParams, WfParams};
pub use schemes::{Scheme, SchemeId, SchemeOptions, StepState};
