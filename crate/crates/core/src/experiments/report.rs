//! Experiment reports and their CSV / JSON-lines serializations.
//!
//! A report holds one record per trial plus per-`n` summary statistics that
//! can always be recomputed from the records. Both formats embed the
//! experiment name, crate version, generator, and master seed, and are
//! byte-identical for identical inputs.
//!
//! CSV: a header row (`experiment,version,generator,master_seed,n,trial,seed`
//! followed by the experiment's value columns), then one row per trial.
//!
//! JSON-lines: one `{"kind":"trial",...}` object per trial, then a single
//! `{"kind":"summary",...}` object carrying the config and summary rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, ExperimentError};

/// One measured value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Real(f64),
    List(Vec<u64>),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Bool(b) => Some(if b { 1.0 } else { 0.0 }),
            Value::Int(i) => Some(i as f64),
            Value::Real(r) => Some(r),
            Value::List(_) | Value::Text(_) => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match *self {
            Value::Int(i) => Some(i),
            _ => None,
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Real(r) => r.to_string(),
            Value::List(items) => items.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            Value::Text(s) => s.clone(),
        }
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&[usize]> for Value {
    fn from(v: &[usize]) -> Self {
        Value::List(v.iter().map(|&x| x as u64).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub values: BTreeMap<String, Value>,
}

impl TrialRecord {
    pub fn new(n: usize, trial: usize, seed: u64) -> Self {
        TrialRecord {
            n,
            trial,
            seed,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }

    /// Numeric value of `key`; panics if absent or non-numeric.
    pub fn num(&self, key: &str) -> f64 {
        self.get(key)
            .and_then(Value::as_f64)
            .unwrap_or_else(|| panic!("trial record has no numeric `{key}`"))
    }
}

/// Statistics of one metric over the trials at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub metric: String,
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub max: f64,
}

/// Per-`n` summary of each metric, in ascending `n` then metric-list order.
/// The median of an even count is the mean of the two middle values.
pub fn summarize(trials: &[TrialRecord], metrics: &[String]) -> Vec<SummaryRow> {
    let mut by_n: BTreeMap<usize, Vec<&TrialRecord>> = BTreeMap::new();
    for t in trials {
        by_n.entry(t.n).or_default().push(t);
    }
    let mut rows = Vec::new();
    for (n, group) in by_n {
        for metric in metrics {
            let mut xs: Vec<f64> = group
                .iter()
                .filter_map(|t| t.get(metric).and_then(Value::as_f64))
                .collect();
            if xs.is_empty() {
                continue;
            }
            xs.sort_by(f64::total_cmp);
            let count = xs.len();
            let median = if count % 2 == 1 {
                xs[count / 2]
            } else {
                (xs[count / 2 - 1] + xs[count / 2]) / 2.0
            };
            let mean = xs.iter().sum::<f64>() / count as f64;
            rows.push(SummaryRow {
                n,
                metric: metric.clone(),
                count,
                min: xs[0],
                median,
                mean,
                max: xs[count - 1],
            });
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub version: String,
    pub generator: String,
    pub config: ExperimentConfig,
    /// Value columns of every trial record, in order.
    pub columns: Vec<String>,
    /// Columns summarized per `n`.
    pub metrics: Vec<String>,
    /// False when any trial relied on sampled rather than exhaustive search.
    pub certified: bool,
    pub trials: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

impl ExperimentReport {
    pub(crate) fn assemble(
        config: ExperimentConfig,
        columns: &[&str],
        metrics: &[&str],
        trials: Vec<TrialRecord>,
    ) -> Self {
        let columns: Vec<String> = columns.iter().map(|s| s.to_string()).collect();
        let metrics: Vec<String> = metrics.iter().map(|s| s.to_string()).collect();
        let certified = trials
            .iter()
            .all(|t| t.get("certified").and_then(Value::as_bool).unwrap_or(true));
        let summary = summarize(&trials, &metrics);
        ExperimentReport {
            experiment: config.experiment.clone(),
            version: crate::VERSION.to_string(),
            generator: crate::rng::GENERATOR_NAME.to_string(),
            config,
            columns,
            metrics,
            certified,
            trials,
            summary,
        }
    }

    /// Summary rows for one metric, by `n`.
    pub fn metric_summary(&self, metric: &str) -> Vec<&SummaryRow> {
        self.summary.iter().filter(|r| r.metric == metric).collect()
    }

    pub fn trials_at(&self, n: usize) -> impl Iterator<Item = &TrialRecord> {
        self.trials.iter().filter(move |t| t.n == n)
    }

    /// Human-readable block printed by the command line after a run.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} master_seed={} generator={} version={} certified={}",
            self.experiment, self.config.master_seed, self.generator, self.version, self.certified
        );
        if self.metrics.is_empty() {
            let _ = writeln!(out, "n {}", self.columns.join(" "));
            for t in &self.trials {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .map(|c| t.get(c).map_or_else(String::new, format_value))
                    .collect();
                let _ = writeln!(out, "{} {}", t.n, fields.join(" "));
            }
        } else {
            let _ = writeln!(out, "n metric count min median mean max");
            for r in &self.summary {
                let _ = writeln!(
                    out,
                    "{} {} {} {:.6} {:.6} {:.6} {:.6}",
                    r.n, r.metric, r.count, r.min, r.median, r.mean, r.max
                );
            }
        }
        out
    }
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Real(r) if *r != 0.0 && r.abs() < 1e-4 => format!("{r:.6e}"),
        Value::Real(r) => format!("{r:.6}"),
        other => other.csv_field().replace(' ', ","),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    #[serde(rename = "jsonl")]
    JsonLines,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::JsonLines => "jsonl",
        }
    }
}

/// Conventional file name: `<experiment>-<master seed>.<ext>`.
pub fn report_file_name(report: &ExperimentReport, format: ReportFormat) -> String {
    format!(
        "{}-{}.{}",
        report.experiment,
        report.config.master_seed,
        format.extension()
    )
}

pub fn render_report(report: &ExperimentReport, format: ReportFormat) -> Result<String, ExperimentError> {
    match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::JsonLines => render_jsonl(report),
    }
}

fn render_csv(report: &ExperimentReport) -> Result<String, ExperimentError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header: Vec<String> = [
        "experiment",
        "version",
        "generator",
        "master_seed",
        "n",
        "trial",
        "seed",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(report.columns.iter().cloned());
    w.write_record(&header)?;
    for t in &report.trials {
        let mut row = vec![
            report.experiment.clone(),
            report.version.clone(),
            report.generator.clone(),
            report.config.master_seed.to_string(),
            t.n.to_string(),
            t.trial.to_string(),
            t.seed.to_string(),
        ];
        row.extend(
            report
                .columns
                .iter()
                .map(|c| t.get(c).map_or_else(String::new, Value::csv_field)),
        );
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| ExperimentError::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ExperimentError::Format(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct TrialLine {
    kind: String,
    experiment: String,
    version: String,
    master_seed: u64,
    n: usize,
    trial: usize,
    seed: u64,
    values: BTreeMap<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    kind: String,
    experiment: String,
    version: String,
    generator: String,
    config: ExperimentConfig,
    columns: Vec<String>,
    metrics: Vec<String>,
    certified: bool,
    summary: Vec<SummaryRow>,
}

fn render_jsonl(report: &ExperimentReport) -> Result<String, ExperimentError> {
    let mut out = String::new();
    for t in &report.trials {
        let line = TrialLine {
            kind: "trial".into(),
            experiment: report.experiment.clone(),
            version: report.version.clone(),
            master_seed: report.config.master_seed.0,
            n: t.n,
            trial: t.trial,
            seed: t.seed,
            values: t.values.clone(),
        };
        out.push_str(&serde_json::to_string(&line)?);
        out.push('\n');
    }
    let summary = SummaryLine {
        kind: "summary".into(),
        experiment: report.experiment.clone(),
        version: report.version.clone(),
        generator: report.generator.clone(),
        config: report.config.clone(),
        columns: report.columns.clone(),
        metrics: report.metrics.clone(),
        certified: report.certified,
        summary: report.summary.clone(),
    };
    out.push_str(&serde_json::to_string(&summary)?);
    out.push('\n');
    Ok(out)
}

/// Reads a JSON-lines report back. Summary rows are taken as written, not
/// recomputed, so callers can compare them against [`summarize`].
pub fn parse_jsonl(text: &str) -> Result<ExperimentReport, ExperimentError> {
    let mut trials = Vec::new();
    let mut summary: Option<SummaryLine> = None;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        if summary.is_some() {
            return Err(ExperimentError::Format(format!(
                "line {}: content after the summary object",
                i + 1
            )));
        }
        let raw: serde_json::Value = serde_json::from_str(line)?;
        match raw.get("kind").and_then(|k| k.as_str()) {
            Some("trial") => {
                let t: TrialLine = serde_json::from_value(raw)?;
                trials.push(TrialRecord {
                    n: t.n,
                    trial: t.trial,
                    seed: t.seed,
                    values: t.values,
                });
            }
            Some("summary") => summary = Some(serde_json::from_value(raw)?),
            other => {
                return Err(ExperimentError::Format(format!(
                    "line {}: unknown kind {other:?}",
                    i + 1
                )))
            }
        }
    }
    let s = summary.ok_or_else(|| ExperimentError::Format("missing summary object".into()))?;
    Ok(ExperimentReport {
        experiment: s.experiment,
        version: s.version,
        generator: s.generator,
        config: s.config,
        columns: s.columns,
        metrics: s.metrics,
        certified: s.certified,
        trials,
        summary: s.summary,
    })
}

/// Writes the report to `path`. If `path` is an existing directory the file
/// is named by [`report_file_name`] inside it. Returns the path written.
pub fn write_report(report: &ExperimentReport, format: ReportFormat, path: &Path) -> Result<PathBuf, ExperimentError> {
    let target = if path.is_dir() {
        path.join(report_file_name(report, format))
    } else {
        path.to_path_buf()
    };
    let text = render_report(report, format)?;
    std::fs::write(&target, text).map_err(|source| ExperimentError::Io {
        path: target.clone(),
        source,
    })?;
    Ok(target)
}
