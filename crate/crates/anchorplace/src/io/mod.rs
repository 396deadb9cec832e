//! File formats and batch execution.
//!
//! All formats are plain UTF-8 text with decimal points and are written in
//! a canonical form: reading a canonically written file and writing it
//! again reproduces it byte for byte.

mod batch;
mod formats;

pub use batch::{
    run_batch, sweep_branches, BatchResult, PersonFailure, PersonOutcome, RunReport, SweepRow,
};
pub use formats::{
    config_from_str, config_to_string, locations_from_str, locations_to_string, placed_to_string,
    plans_from_str, plans_to_string, read_config, read_locations, read_plans, report_to_string,
    sweep_to_string, write_config, write_locations, write_placed, write_plans, write_report,
    write_sweep,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IoError {
    #[error("{file}:{line}:{column}: {message}")]
    Malformed {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: duplicate location id {id}")]
    DuplicateLocationId { file: String, id: u64 },
    #[error("{file}: {message}")]
    File { file: String, message: String },
}

impl IoError {
    fn file_error(file: &str, err: std::io::Error) -> Self {
        IoError::File {
            file: file.to_string(),
            message: err.to_string(),
        }
    }
}
