//! Command-line front end for `naw-core` and the benchmark harness behind
//! the `stats` and `bench` subcommands.

pub mod args;
pub mod bench;
pub mod commands;
mod error;

pub use error::CliError;
