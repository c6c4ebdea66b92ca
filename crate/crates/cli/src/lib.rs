//! Command-line front end for `subelliptic-core`: the domain file format,
//! layered configuration, JSON output, and subcommand dispatch.

pub mod cli;
pub mod config;
pub mod dsl;
pub mod output;
mod render;

pub use cli::{run_cli, EXIT_EXHAUSTED, EXIT_OK, EXIT_REPLAY_MISMATCH, EXIT_USAGE};
pub use dsl::{parse_domain, parse_polynomial, print_domain, DomainFile, ParseError};
pub use output::RunOutput;
