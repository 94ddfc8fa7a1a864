//! Configuration-driven runner for the `lsd-core` experiments.
//!
//! A run reads one INI-style config (see [`config`]), dispatches to the
//! matching experiment and writes a CSV data file plus a JSON summary.

pub mod config;
pub mod error;
pub mod run;

pub use config::{ExperimentConfig, Kind};
pub use error::{ConfigError, RunError};
pub use run::{run, Outcome};
