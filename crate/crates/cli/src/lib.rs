//! Front end for `cxpt-core`: configuration, field specs, JSON reports,
//! the acceptance criteria and the `cxpt` command tree.

pub mod commands;
pub mod config;
pub mod coverage;
pub mod fields;
pub mod report;
pub mod verify;

pub use commands::{run, Outcome, EXIT_INVALID, EXIT_NUMERICAL};
pub use config::{Config, ConfigError, CONFIG_ENV};
pub use verify::{run_criterion, summary_line, CriterionReport, CRITERIA};
