//! Command-line driver for the workbench: argument grammar, output formats
//! and the on-disk result cache.

pub mod cache;
pub mod commands;
pub mod emit;

pub use commands::{exit_code, run, Cli, Command, JobArgs, Outcome};
