//! IO and orchestration around `qnn-core`: the WDBC loader, PGM images,
//! run configuration, CSV artifacts and the subcommands of the `qnn` CLI.

pub mod config;
pub mod dataset;
mod error;
pub mod pgm;
pub mod report;
pub mod runner;

pub use config::{Command, InitMode, RunConfig};
pub use dataset::{load_wbc_csv, DataError};
pub use error::RunError;
pub use pgm::{load_pgm, PgmError};
pub use runner::{run_evaluate, run_export_curves, run_predict, run_train, Prediction, TrainReport};
