//! Command-line interface.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::job::{parse_jobs, ClassSpec, JobSpec, Mode};
use crate::report::{emit, Format, ReportDocument};
use crate::run::run_batch;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONJECTURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tdual",
    version,
    about = "T-duality of circle bundles with H-flux"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Degrees of the total space to compute.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Exit with status 3 when a result only holds conjecturally.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every job in a JSON job file.
    Run { jobfile: PathBuf },
    /// Dualize a triple over a catalog base.
    Dualize {
        #[arg(long)]
        base: String,
        /// Euler class: coordinates (`0`) or labels (`2*vol`).
        #[arg(long, default_value = "")]
        euler: String,
        /// H-flux in H³ of the total space, e.g. `3*volxz`.
        #[arg(long)]
        flux: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Tables for a classifying space: R2, R32, E32 or E2.
    Tables { space: String },
    /// Cohomology of a circle bundle over a catalog base.
    Cohomology {
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "")]
        euler: String,
    },
    /// Partition H² of a total space into cosets of one class.
    Cosets {
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "")]
        euler: String,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        flux: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
}

/// What a run prints and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn class(text: &str) -> Option<ClassSpec> {
    (!text.is_empty()).then(|| ClassSpec::Expr(text.to_string()))
}

fn single_job(cli: &Cli) -> JobSpec {
    let mut spec = match &cli.command {
        Command::Run { .. } => unreachable!("batch jobs are read from a file"),
        Command::Dualize {
            base,
            euler,
            flux,
            b,
        } => JobSpec {
            base: Some(base.clone()),
            euler: class(euler),
            flux: class(flux),
            b: b.as_deref().and_then(class),
            ..JobSpec::new(Mode::Dualize)
        },
        Command::Tables { space } => JobSpec {
            space: Some(space.clone()),
            ..JobSpec::new(Mode::ClassifyingTables)
        },
        Command::Cohomology { base, euler } => JobSpec {
            base: Some(base.clone()),
            euler: class(euler),
            ..JobSpec::new(Mode::Cohomology)
        },
        Command::Cosets {
            base,
            euler,
            generator,
            flux,
            b,
        } => JobSpec {
            base: Some(base.clone()),
            euler: class(euler),
            generator: generator.as_deref().and_then(class),
            flux: flux.as_deref().and_then(class),
            b: b.as_deref().and_then(class),
            ..JobSpec::new(Mode::CosetPartition)
        },
    };
    spec.max_degree = cli.max_degree;
    spec
}

fn finish(cli: &Cli, docs: &[ReportDocument]) -> Outcome {
    let code = if docs.iter().any(|d| d.error.is_some()) {
        EXIT_INVALID
    } else if cli.strict && docs.iter().any(|d| d.has_flag("CONJECTURE")) {
        EXIT_CONJECTURE
    } else {
        EXIT_OK
    };
    let stderr = docs
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.error.as_ref().map(|e| format!("job {}: {e}\n", i + 1)))
        .collect();
    Outcome {
        stdout: emit(docs, cli.format),
        stderr,
        code,
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Run { jobfile } => {
            let path = jobfile.display().to_string();
            let text = match std::fs::read_to_string(jobfile) {
                Ok(t) => t,
                Err(source) => return failure(&CliError::Io { path, source }),
            };
            let mut jobs = match parse_jobs(&path, &text) {
                Ok(j) => j,
                Err(e) => return failure(&e),
            };
            if let Some(m) = cli.max_degree {
                for j in &mut jobs {
                    j.max_degree.get_or_insert(m);
                }
            }
            finish(cli, &run_batch(&jobs))
        }
        _ => finish(cli, &run_batch(&[single_job(cli)])),
    }
}
