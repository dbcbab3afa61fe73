//! invariant suites for each module

pub mod densemix;
pub mod gaussfermi;
pub mod isingdecohere;
pub mod predictions;

use crate::error::{HarnessError, HarnessResult};
use crate::fuzz::Hooks;
use crate::report::VerifyReport;

pub const SUITES: [&str; 4] = ["densemix", "gaussfermi", "isingdecohere", "predictions"];

/// instance counts and seeds shared by all suites
#[derive(Clone, Copy)]
pub struct Options {
    pub instances: usize,
    pub seed: u64,
    pub hooks: Hooks,
}

impl Default for Options {
    fn default() -> Self {
        Options { instances: 200, seed: 0, hooks: Hooks::default() }
    }
}

/// run one suite, or every suite for "all"
pub fn run_verify(suite: &str, opts: &Options) -> HarnessResult<VerifyReport> {
    swssb_core::linalg::sequential_kernels();
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(HarnessError::Config(format!("unknown suite {other:?}; expected one of {SUITES:?} or \"all\""))),
    };
    let mut checks = vec![];
    for name in names {
        log::info!("verify {name}");
        checks.extend(match name {
            "densemix" => densemix::suite(opts)?,
            "gaussfermi" => gaussfermi::suite(opts)?,
            "isingdecohere" => isingdecohere::suite(opts)?,
            _ => predictions::suite(opts)?,
        });
    }
    Ok(VerifyReport::new(suite, checks))
}
