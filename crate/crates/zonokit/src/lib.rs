//! File formats and subcommand logic for the `zonokit` command-line tool.

pub mod commands;
pub mod format;
pub mod off;
pub mod records;

pub use commands::{CliError, Outcome, RunConfig};
pub use format::{parse_matrix, MatrixRecord, ParseError};
