//! Library half of the `swarmnav` command: argument definitions and one
//! function per subcommand. Every command returns the text it would print,
//! so tests can compare it against direct library calls.

pub mod args;
pub mod commands;
pub mod config;

use thiserror::Error;

pub use args::{Cli, Command};
pub use config::{ExperimentConfig, Overrides, ResolvedRun};

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<swarmnav_core::terrain::ScenarioError> for CliError {
    fn from(e: swarmnav_core::terrain::ScenarioError) -> Self {
        use swarmnav_core::terrain::ScenarioError;
        match e {
            ScenarioError::Io { .. } => CliError::Io(e.to_string()),
            ScenarioError::Schema { .. } | ScenarioError::Invalid(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}

/// Runs a parsed command line and returns what belongs on standard output.
pub fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::GainTable { m_max, csv } => commands::gain_table(m_max, csv),
        Command::Curves { p_step, p_max, m } => commands::curves(p_step, p_max, &m),
        Command::Gen(gen) => commands::gen(gen),
        Command::Run(run) => commands::run(run),
        Command::Validate { scenario } => commands::validate(&scenario),
    }
    .and_then(|(text, out)| match out {
        Some(path) => {
            std::fs::write(&path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    })
}
