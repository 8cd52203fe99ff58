//! Job specifications as read from job files or built from the command line.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::expr::parse_class;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Dualize,
    Cohomology,
    ClassifyingTables,
    CosetPartition,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Dualize => "dualize",
            Mode::Cohomology => "cohomology",
            Mode::ClassifyingTables => "classifying-tables",
            Mode::CosetPartition => "coset-partition",
        }
    }
}

/// A class given by coordinates or by a combination of generator labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Coords(Vec<i64>),
    Expr(String),
}

impl ClassSpec {
    pub fn resolve(&self, field: &str, labels: &[String]) -> Result<Vec<i64>> {
        match self {
            ClassSpec::Coords(c) => Ok(c.clone()),
            ClassSpec::Expr(s) => parse_class(field, s, labels),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub mode: Mode,
    /// Catalog base space, e.g. `T2`, `RP3`, `Sigma2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// Classifying space for table jobs: `R2`, `R32`, `E32` or `E2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux: Option<ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ClassSpec>,
    /// Subgroup generator in H² of the total space for coset jobs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

impl JobSpec {
    pub fn new(mode: Mode) -> Self {
        JobSpec {
            mode,
            base: None,
            space: None,
            euler: None,
            flux: None,
            b: None,
            generator: None,
            max_degree: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    schema_version: u32,
    jobs: Vec<JobSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JobInput {
    File(JobFile),
    Many(Vec<JobSpec>),
    One(JobSpec),
}

/// Parses a job file: `{"schema_version": 1, "jobs": [...]}`, a bare array
/// of jobs, or a single job.
pub fn parse_jobs(context: &str, text: &str) -> Result<Vec<JobSpec>> {
    // Untagged enums hide the position of the real error, so try each shape
    // and report the most specific failure.
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_error(context, &e))?;
    let input = serde_json::from_value::<JobInput>(value.clone()).map_err(|_| {
        let e = match &value {
            serde_json::Value::Array(_) => serde_json::from_str::<Vec<JobSpec>>(text).err(),
            serde_json::Value::Object(m) if m.contains_key("jobs") => {
                serde_json::from_str::<JobFile>(text).err()
            }
            _ => serde_json::from_str::<JobSpec>(text).err(),
        };
        match e {
            Some(e) => parse_error(context, &e),
            None => CliError::Validation(format!("{context}: unrecognized job file layout")),
        }
    })?;
    match input {
        JobInput::File(f) if f.schema_version != SCHEMA_VERSION => {
            Err(CliError::Validation(format!(
                "{context}: schema_version {} is not supported (expected {SCHEMA_VERSION})",
                f.schema_version
            )))
        }
        JobInput::File(f) => Ok(f.jobs),
        JobInput::Many(v) => Ok(v),
        JobInput::One(j) => Ok(vec![j]),
    }
}

fn parse_error(context: &str, e: &serde_json::Error) -> CliError {
    CliError::Parse {
        context: context.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}
