//! Configuration-driven front end for the `extsq-core` identity checks.
//!
//! A run reads a TOML task list (see [`config`]), dispatches every task to
//! the core library ([`run`]) and renders the resulting reports
//! ([`report`]).

pub mod app;
pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, Config, ConfigError, TaskConfig, TaskKind};
pub use report::{emit_report, emit_reports, exit_code, Format, Report, Verdict};
pub use run::{run_batch, run_task, RunOptions};
