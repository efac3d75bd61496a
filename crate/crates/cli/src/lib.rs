//! Reports, configuration and the command-line front end for `primecube-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod verify;

pub use error::CliError;
