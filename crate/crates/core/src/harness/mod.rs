//! Verification suite, parser, cohomology oracle and reports.

pub mod checks;
pub mod oracle;
pub mod parse;
pub mod random;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
