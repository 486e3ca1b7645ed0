//! Command-line front end for `sparsef2`: instance file formats, run
//! configuration and the command runner used by the `sparsef2` binary.

pub mod config;
pub mod error;
pub mod format;
pub mod run;

pub use config::{Cli, RunConfig};
pub use error::CliError;
pub use run::{run, run_args, Outcome, Report};
