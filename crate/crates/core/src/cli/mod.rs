//! Command-line front end: configuration, sweep and report commands, and
//! the validation suite. Output is plain text and byte-deterministic.

pub mod commands;
pub mod config;
pub mod output;
pub mod validate;

pub use commands::{cmd_bound, cmd_transmission, cmd_tunnelling, emit};
pub use config::{Alpha, Fidelity, RunConfig, KEYS};
pub use output::{git_blob_sha1, CSV_HEADER};
pub use validate::{cmd_validate, perturbed_airy, run_suites, SuiteResult};

use thiserror::Error;

use crate::bound::BoundError;
use crate::model::ModelError;
use crate::scatter::ScatterError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Scatter(#[from] ScatterError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}
