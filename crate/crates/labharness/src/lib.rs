//! configuration-driven sweeps, verification suites and file output

pub mod catalog;
pub mod config;
pub mod emit;
pub mod error;
pub mod fuzz;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::{HarnessError, HarnessResult};
pub use report::{Check, VerifyReport};
pub use sweep::{covering_sweep, SweepRecord};
pub use verify::{run_verify, Options};
