//! Batch execution of jobs listed in a JSON file.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cli::{self, Failure, EXIT_OK};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub jobs: Vec<Job>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    /// Subcommand words, e.g. "verify cg-braid".
    pub command: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl Job {
    /// Argument vector equivalent to this job.
    pub fn argv(&self) -> Result<Vec<String>, String> {
        let mut argv = vec!["mwf".to_string()];
        argv.extend(self.command.split_whitespace().map(str::to_string));
        for (k, v) in &self.params {
            let flag = format!("--{}", k.replace('_', "-"));
            match v {
                Value::Bool(true) => argv.push(flag),
                Value::Bool(false) | Value::Null => {}
                Value::Number(x) => argv.extend([flag, x.to_string()]),
                Value::String(s) => argv.extend([flag, s.clone()]),
                Value::Array(items) => {
                    let parts: Option<Vec<String>> = items.iter().map(|x| x.as_i64().map(|i| i.to_string())).collect();
                    let joined = parts.ok_or_else(|| format!("parameter '{k}' must be a list of integers"))?;
                    argv.extend([flag, joined.join(",")]);
                }
                Value::Object(_) => return Err(format!("parameter '{k}' cannot be an object")),
            }
        }
        Ok(argv)
    }
}

pub fn parse(text: &str) -> Result<JobFile, String> {
    let file: JobFile = serde_json::from_str(text).map_err(|e| format!("malformed job file: {e}"))?;
    for (i, job) in file.jobs.iter().enumerate() {
        job.argv().map_err(|e| format!("job {i}: {e}"))?;
    }
    Ok(file)
}

pub(crate) fn run_file(path: &Path) -> Result<(bool, Value), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = parse(&text).map_err(Failure::Usage)?;
    let outcomes: Vec<cli::Outcome> = file
        .jobs
        .par_iter()
        .map(|job| cli::run_in_pool(job.argv().expect("validated")))
        .collect();
    let mut failures = 0;
    let results: Vec<Value> = file
        .jobs
        .iter()
        .zip(&outcomes)
        .map(|(job, o)| {
            if o.code != EXIT_OK {
                failures += 1;
            }
            let output = serde_json::from_str::<Value>(&o.stdout).unwrap_or(Value::Null);
            let mut r = json!({ "command": job.command, "exit_code": o.code, "output": output });
            if !o.stderr.is_empty() {
                r["error"] = json!(o.stderr.trim());
            }
            r
        })
        .collect();
    let mut summary = json!({ "jobs": file.jobs.len(), "failures": failures });
    if !results.is_empty() {
        summary["results"] = Value::Array(results);
    }
    Ok((failures == 0, summary))
}
