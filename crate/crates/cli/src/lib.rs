//! Library surface of the `ffent` command-line harness: configuration,
//! experiment runners, and row emission. The binary in `main.rs` is a thin
//! argument-parsing layer over these.

pub mod config;
pub mod emit;
pub mod error;
pub mod rows;
pub mod runner;

pub use error::{CliError, Result};
