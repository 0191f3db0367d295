//! Batch front end: input loading, commands, the property suite and reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod json;
pub mod report;
pub mod suite;

pub use cli::Cli;
pub use commands::{execute, run};
pub use config::{load_payload, load_ring, Budgets, DglaSource, OutputFormat, WorkbenchConfig};
pub use report::{InputDigest, Outcome, RunReport};
pub use suite::{run_suite, CheckResult, SuiteReport};
