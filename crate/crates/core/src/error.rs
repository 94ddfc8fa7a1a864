use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid sizes, parameters or scheme/model combinations.
    #[error("configuration error: {0}")]
    Config(String),

    /// A state or parameter lies outside the domain of a transform.
    #[error("domain error: {what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// Bracketing or iteration failed while inverting a monotone map.
    #[error("inversion failure for target {target}: last bracket [{lo}, {hi}] after {iterations} iterations")]
    Inversion {
        target: f64,
        lo: f64,
        hi: f64,
        iterations: usize,
    },

    #[error("non-finite value {value} while evaluating {context}")]
    Numeric { context: &'static str, value: f64 },

    /// The step size is too large for a scheme's denominator to stay away from zero.
    #[error("step size {dt} too large: {reason}; use a smaller step")]
    StepSize { dt: f64, reason: &'static str },

    #[error("invalid data: {0}")]
    Data(String),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("path {path}: {source}")]
    AtPath {
        path: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::AtStep {
            step,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_path(self, path: usize) -> Self {
        Error::AtPath {
            path,
            source: Box::new(self),
        }
    }
}
