//! Instance files, profile generation and solver dispatch behind the
//! `kemeny` binary.

pub mod format;
pub mod generate;
pub mod run;

pub use format::{parse_instance, render, ParseError};
pub use generate::{generate_profile, Model};
pub use run::{run, Action, Decision, Flags, ResultRecord, RunError, Witness};
