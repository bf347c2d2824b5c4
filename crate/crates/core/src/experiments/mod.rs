//! Seeded experiments on random matrices and random graphs.
//!
//! Every trial draws its object from the seed `master.derive(n, trial)`, so
//! any single trial can be re-run on its own. Trials run on the current
//! rayon pool and are collected in `(n, trial)` order; reports do not depend
//! on the number of worker threads.

mod report;
mod runs;
mod tables;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{
    parse_jsonl, render_report, report_file_name, summarize, write_report, ExperimentReport, ReportFormat, SummaryRow,
    TrialRecord, Value,
};
pub use runs::{boolw_vs_rw_experiment, lemma1_experiment, scaling_experiment, submatrix_shape};
pub use tables::{bell_asymptotic_check, bell_report, envelope_curve, envelope_report, BellRow, EnvelopeRow};

use crate::boolspace::BoolSpaceError;
use crate::gf2::{Gf2Error, DEFAULT_SUBMATRIX_WORK_CAP};
use crate::rng::RngSeed;
use crate::widths::{WidthError, DEFAULT_BALANCED_CAP, DEFAULT_EXACT_CAP};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    BoolSpace(#[from] BoolSpaceError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("report format: {0}")]
    Format(String),
}

impl From<csv::Error> for ExperimentError {
    fn from(e: csv::Error) -> Self {
        ExperimentError::Format(e.to_string())
    }
}

impl From<serde_json::Error> for ExperimentError {
    fn from(e: serde_json::Error) -> Self {
        ExperimentError::Format(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact minimization wherever the work cap allows; sampled otherwise.
    #[default]
    Exhaustive,
    /// Always sample; results are upper bounds.
    Sampled,
}

/// Work limits for an experiment run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest number of submatrices enumerated for one exact minimum.
    pub submatrix_work: u64,
    /// Random draws per sampled minimum.
    pub sampled_draws: usize,
    /// Vertex cap of the exact width engine.
    pub exact_n: usize,
    /// Vertex cap of the balanced-cut enumeration.
    pub balanced_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            submatrix_work: DEFAULT_SUBMATRIX_WORK_CAP as u64,
            sampled_draws: 10_000,
            exact_n: DEFAULT_EXACT_CAP,
            balanced_n: DEFAULT_BALANCED_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub master_seed: RngSeed,
    pub mode: Mode,
    pub caps: Caps,
}

impl ExperimentConfig {
    pub fn new(experiment: &str, n_values: Vec<usize>, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            experiment: experiment.to_string(),
            n_values,
            trials,
            master_seed: RngSeed(master_seed),
            mode: Mode::default(),
            caps: Caps::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    /// Seed of trial `trial` at sweep point `n`.
    pub fn trial_seed(&self, n: usize, trial: usize) -> RngSeed {
        self.master_seed.derive(n as u64, trial as u64)
    }

    fn require_trials(&self) -> Result<(), ExperimentError> {
        if self.n_values.is_empty() {
            return Err(ExperimentError::Config("empty n list".into()));
        }
        if self.trials == 0 {
            return Err(ExperimentError::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs `trial` for every `(n, index)` pair in config order on the current
/// rayon pool and returns the records in that order.
fn run_trials<F>(cfg: &ExperimentConfig, trial: F) -> Result<Vec<TrialRecord>, ExperimentError>
where
    F: Fn(usize, usize, RngSeed) -> Result<TrialRecord, ExperimentError> + Sync,
{
    let jobs: Vec<(usize, usize)> = cfg
        .n_values
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    jobs.par_iter()
        .map(|&(n, t)| trial(n, t, cfg.trial_seed(n, t)))
        .collect()
}
