//! Reports and command-line front end for `hewett-core`.

pub mod commands;
pub mod report;
pub mod text;

pub use commands::{classify, hermitian, profile, verify, SuiteOptions, UsageError};
pub use report::{Check, Envelope, Status};
