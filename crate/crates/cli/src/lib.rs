//! Command-line front end for `munorm-core`: operator specs in JSON,
//! reports in JSON or CSV, and the acceptance suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod spec;
pub mod suite;

pub use commands::run;
pub use config::{Cli, Command, Emit, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Format, Report};
