//! Parser, printer and command-line front end for `.dl` ontology files.

pub mod app;
pub mod syntax;

pub use app::{run, Cli, CliError, Command};
pub use syntax::{parse, Document, Position, SyntaxError};
