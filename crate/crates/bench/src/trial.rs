//! Timed build-and-save trials for one fixture under one condition.
//!
//! The instrumented condition installs the interception hooks, which cannot
//! be removed again, so each condition needs its own process.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use maidr::fixtures::{build, FixtureData, Kind, Layer};
use maidr::plotkit::pyplot;
use thiserror::Error;

use crate::samples::Condition;

#[derive(Debug, Error)]
pub enum TrialError {
    #[error("{kind}/{layer} ({condition}): {message}")]
    Fixture { kind: Kind, layer: Layer, condition: Condition, message: String },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("spawning trial process: {0}")]
    Spawn(std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSpec {
    pub kind: Kind,
    pub layer: Layer,
    pub condition: Condition,
    pub trials: usize,
    pub warmup: usize,
}

impl TrialSpec {
    fn fail(&self, message: impl ToString) -> TrialError {
        TrialError::Fixture { kind: self.kind, layer: self.layer, condition: self.condition, message: message.to_string() }
    }
}

fn once(spec: &TrialSpec, data: &FixtureData, out: &Path) -> Result<f64, TrialError> {
    let start = Instant::now();
    let fig = build(spec.kind, spec.layer, data).map_err(|e| spec.fail(e))?;
    match spec.condition {
        Condition::With => maidr::save_svg(&fig, out).map(drop).map_err(|e| spec.fail(e))?,
        Condition::Without => fig.savefig(out).map_err(|e| spec.fail(e))?,
    }
    let ms = start.elapsed().as_secs_f64() * 1e3;
    pyplot::close_figure(&fig);
    Ok(ms)
}

/// Runs the trials in this process and returns the kept samples in ms.
/// Installs the hooks first for the instrumented condition.
pub fn run_in_process(spec: &TrialSpec, data: &FixtureData) -> Result<Vec<f64>, TrialError> {
    if spec.trials == 0 {
        return Err(TrialError::NoTrials);
    }
    if spec.condition == Condition::With {
        maidr::install().map_err(|e| spec.fail(e))?;
    }
    let dir = tempfile::tempdir().map_err(|e| spec.fail(e))?;
    let out = dir.path().join("figure.svg");
    for _ in 0..spec.warmup {
        once(spec, data, &out)?;
    }
    (0..spec.trials).map(|_| once(spec, data, &out)).collect()
}

/// Runs the trials in a fresh `bench trial` process.
pub fn run_subprocess(exe: &Path, spec: &TrialSpec, config: Option<&PathBuf>) -> Result<Vec<f64>, TrialError> {
    let mut cmd = Command::new(exe);
    cmd.arg("trial")
        .args(["--fixture", spec.kind.slug()])
        .args(["--layer", &spec.layer.to_string()])
        .args(["--condition", spec.condition.as_str()])
        .args(["--trials", &spec.trials.to_string()])
        .args(["--warmup", &spec.warmup.to_string()]);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    let out = cmd.output().map_err(TrialError::Spawn)?;
    if !out.status.success() {
        return Err(spec.fail(String::from_utf8_lossy(&out.stderr).trim()));
    }
    let samples: Result<Vec<f64>, _> = String::from_utf8_lossy(&out.stdout).lines().map(str::parse).collect();
    let samples = samples.map_err(|e| spec.fail(format!("bad trial output: {e}")))?;
    if samples.len() != spec.trials {
        return Err(spec.fail(format!("expected {} samples, got {}", spec.trials, samples.len())));
    }
    Ok(samples)
}
