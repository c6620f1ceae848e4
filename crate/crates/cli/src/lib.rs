//! File formats, the bundled group catalog and the `grcat` command line.

pub mod catalog;
pub mod commands;
pub mod format;

pub use commands::{run, Cli, Outcome};
