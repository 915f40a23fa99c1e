//! Job handling behind the `bug-spectra` binary: validation of flags and
//! batch files, execution against the library, and JSON/CSV rendering.

pub mod error;
pub mod job;
pub mod report;
pub mod run;

use serde::Serialize;
use serde_json::Value;

pub use error::CliError;
pub use job::{solve_config_from_env, CommandKind, Format, Job, JobConfig, Method};
pub use report::Report;
pub use run::execute;

use bug_spectra::SolveConfig;

#[derive(Serialize)]
struct BatchLine<'a> {
    job_id: Value,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn batch_job(config: &JobConfig, cfg: &SolveConfig) -> Result<Report, CliError> {
    if config.output.is_some() {
        return Err(CliError::Validation("output is not accepted inside a batch".into()));
    }
    if config.format == Some(Format::Csv) {
        return Err(CliError::Validation("batch results are always JSON".into()));
    }
    execute(&config.validate()?, cfg)
}

/// Runs every job in order and renders one JSON line per job. Jobs without
/// a `job_id` are identified by their position. The exit code is the
/// largest over all jobs.
pub fn run_batch(configs: &[JobConfig], cfg: &SolveConfig) -> (String, u8) {
    let mut out = String::new();
    let mut worst = 0;
    for (k, config) in configs.iter().enumerate() {
        let job_id = config.job_id.clone().map_or(Value::from(k), Value::from);
        let outcome = batch_job(config, cfg);
        let line = match &outcome {
            Ok(report) => BatchLine { job_id, exit_code: report.exit_code(), result: Some(report), error: None },
            Err(e) => BatchLine { job_id, exit_code: e.exit_code(), result: None, error: Some(e.to_string()) },
        };
        worst = worst.max(line.exit_code);
        out.push_str(&serde_json::to_string(&line).expect("batch line serializes"));
        out.push('\n');
    }
    (out, worst)
}
