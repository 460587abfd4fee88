//! Seeded verification campaigns over the `noether-core` library, each
//! producing a versioned JSON report.

pub mod config;
pub mod report;
pub mod runner;
pub mod suites;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{CampaignConfig, Command, FileConfig, Overrides};
pub use report::CampaignReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] noether_core::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one campaign. The report's `passed` decides exit code 0 or 1; any
/// error is a usage or configuration problem.
pub fn run(config: &CampaignConfig) -> CliResult<CampaignReport> {
    let started = std::time::Instant::now();
    let out = match config.command {
        Command::VerifyJordan => suites::jordan::run(config)?,
        Command::Noether if config.classical => suites::classical::run(config)?,
        Command::Noether => suites::noether::run(config)?,
        Command::Reconstruct => suites::reconstruct::run(config)?,
        Command::Thermal => suites::thermal::run(config)?,
    };
    Ok(CampaignReport::new(config, out, started.elapsed()))
}
