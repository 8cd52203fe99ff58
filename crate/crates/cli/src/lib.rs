//! Batch front end for the tdual engine: job files in, reports out.

pub mod cli;
pub mod error;
pub mod expr;
pub mod job;
pub mod report;
pub mod run;

pub use error::{CliError, Result};
pub use job::{parse_jobs, ClassSpec, JobSpec, Mode};
pub use report::{emit, emit_json, emit_text, parse_reports, Format, ReportDocument};
pub use run::{run_batch, run_job};
