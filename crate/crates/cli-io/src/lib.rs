//! Run configuration, subcommands of the `isorg` binary, and trace files.

pub mod commands;
pub mod config;
pub mod trace;

pub use config::{load_config, ModelName, RunConfig, OUTPUT_DIR_ENV};
pub use trace::{read_meta, read_trace, write_rows, write_trace, TraceMeta, TraceRow, COLUMNS};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config key `{key}`: {message}")]
    Constraint { key: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Seed(#[from] model_seed::SeedError),
    #[error(transparent)]
    Rg(#[from] rg_map::RgError),
    #[error("flow aborted: {0}")]
    Flow(#[from] flow_driver::FlowError),
    #[error(transparent)]
    Feshbach(#[from] feshbach_core::FeshbachError),
    #[error(transparent)]
    Oracle(#[from] verify::OracleError),
}
