//! Command implementations and file formats for the emoscope binary.
//!
//! The core crate owns the algorithms; this crate owns everything that
//! touches the filesystem: corpus loaders, model serialization, run
//! directories, config resolution, and the subcommands themselves.

pub mod builtin;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod runs;

pub use error::{CliError, CliResult};
