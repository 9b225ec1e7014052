//! Command-line front end: scenario files, reports and CSV output.

pub mod commands;
pub mod scenario_file;

pub use commands::{cmd_compare, cmd_plan, cmd_sweep, cmd_verify, load, CliError};
pub use scenario_file::{parse_scenario, ParseError};
