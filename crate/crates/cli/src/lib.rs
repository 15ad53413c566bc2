//! Command-line front end for the `equilibria` crate.
//!
//! Exit codes: 0 success, 1 I/O or numerical failure, 2 bad flags or
//! unreadable input, 3 generation failure, 4 no equilibrium, 5 verification
//! failed, 6 collision or collapse during integration.

pub mod args;
pub mod commands;
pub mod files;

use thiserror::Error;

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("generation failed: {0}")]
    Generation(equilibria::Error),
    #[error("{0}")]
    NoEquilibrium(equilibria::Error),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("{0}")]
    Collision(equilibria::Error),
    #[error("{0}")]
    Numerical(equilibria::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Numerical(_) => 1,
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Generation(_) => 3,
            CliError::NoEquilibrium(_) => 4,
            CliError::VerifyFailed(_) => 5,
            CliError::Collision(_) => 6,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    commands::dispatch(cli)
}
