//! Library side of the `loewner` command: JSON documents, command
//! implementations and the self-test suite.

pub mod checks;
pub mod commands;
pub mod doc;
pub mod error;
pub mod json;

pub use error::{CliError, CliResult};
