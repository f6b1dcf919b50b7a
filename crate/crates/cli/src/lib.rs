//! Command-line front end for `vdw-sphere`: configuration, sweeps, the
//! normalized-force figure, asymptotic coefficients and a self-test.

pub mod asymptotes;
pub mod config;
pub mod fig1;
pub mod selftest;
pub mod sweep;
pub mod units;

use thiserror::Error;

pub use config::{ConfigError, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    /// 1 config, 2 computation or output, 3 selftest.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Compute(_) | CliError::Io(_) => 2,
            CliError::Selftest(_) => 3,
        }
    }
}
