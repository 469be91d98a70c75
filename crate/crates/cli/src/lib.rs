//! Command-line front end: expression parser, catalog of example
//! structures, command dispatch and report serialization.

pub mod catalog;
mod commands;
pub mod parser;
pub mod report;

pub use commands::{run, CliError, OutputFormat, Outcome};
