//! Command-line front end: file formats, instance generation, and the
//! subcommands of the `celebrity` binary.

pub mod commands;
pub mod format;
pub mod generate;

pub use commands::run;
