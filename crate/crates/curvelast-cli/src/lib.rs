//! Library side of the `curvelast` command-line tool: configuration
//! parsing, the command workflows, output formatting and the verification
//! suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;
