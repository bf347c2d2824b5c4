//! Deterministic tables: the union-bound envelope and Bell-number growth.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{ExperimentConfig, ExperimentError, ExperimentReport, TrialRecord};
use crate::boolspace::{bell, BELL_CAP};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeRow {
    pub n: usize,
    /// `3n log2 3 - n^2`.
    pub log2_value: f64,
    /// `3^{3n} / 2^{n^2}` evaluated from the exact power of three, when that
    /// is a normal `f64`.
    pub direct: Option<f64>,
}

impl EnvelopeRow {
    /// `2^{log2_value}`; underflows to zero for large `n`.
    pub fn value(&self) -> f64 {
        self.log2_value.exp2()
    }
}

/// Envelope `3^{3n} 2^{-n^2}` of the union bound over `n/3`-row submatrices.
pub fn envelope_curve(n_values: &[usize]) -> Vec<EnvelopeRow> {
    n_values
        .iter()
        .map(|&n| {
            let log2_value = 3.0 * n as f64 * 3f64.log2() - (n * n) as f64;
            let direct = BigUint::from(3u32)
                .pow(3 * n as u32)
                .to_f64()
                .filter(|p| p.is_finite())
                .map(|p| p * 2f64.powi(-((n * n) as i32)))
                .filter(|v| v.is_normal());
            EnvelopeRow { n, log2_value, direct }
        })
        .collect()
}

pub fn envelope_report(n_values: &[usize]) -> ExperimentReport {
    let rows = envelope_curve(n_values)
        .into_iter()
        .map(|r| {
            TrialRecord::new(r.n, 0, 0)
                .with("log2_envelope", r.log2_value)
                .with("envelope", r.value())
                .with("representable", r.direct.is_some())
        })
        .collect();
    let cfg = ExperimentConfig::new("envelope", n_values.to_vec(), 1, 0);
    ExperimentReport::assemble(cfg, &["log2_envelope", "envelope", "representable"], &[], rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellRow {
    pub n: usize,
    pub log2_bell: f64,
    /// `n log2 n`.
    pub n_log2_n: f64,
    /// `n (log2 n - log2 log2 (n - 1))`.
    pub refined: f64,
    /// `log2 B_n / n - log2 n + log2 log2 (n - 1)`: the additive constant
    /// needed per element.
    pub margin: f64,
}

/// Tabulates Bell-number growth for `3 <= n <= n_max` and checks
/// `log2 B_n <= n log2 n` on every row.
pub fn bell_asymptotic_check(n_max: usize) -> Result<Vec<BellRow>, ExperimentError> {
    if !(3..=BELL_CAP).contains(&n_max) {
        return Err(ExperimentError::Config(format!(
            "n_max must lie in 3..={BELL_CAP}, got {n_max}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max - 2);
    for n in 3..=n_max {
        let nf = n as f64;
        let log2_bell = bell(n)?.log2();
        let loglog = ((n - 1) as f64).log2().log2();
        let row = BellRow {
            n,
            log2_bell,
            n_log2_n: nf * nf.log2(),
            refined: nf * (nf.log2() - loglog),
            margin: log2_bell / nf - nf.log2() + loglog,
        };
        if row.log2_bell > row.n_log2_n {
            return Err(ExperimentError::Invariant(format!(
                "log2 B_{n} = {} exceeds n log2 n = {}",
                row.log2_bell, row.n_log2_n
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn bell_report(n_max: usize) -> Result<ExperimentReport, ExperimentError> {
    let rows = bell_asymptotic_check(n_max)?
        .into_iter()
        .map(|r| {
            TrialRecord::new(r.n, 0, 0)
                .with("log2_bell", r.log2_bell)
                .with("n_log2_n", r.n_log2_n)
                .with("refined", r.refined)
                .with("margin", r.margin)
        })
        .collect();
    let cfg = ExperimentConfig::new("bell", (3..=n_max).collect(), 1, 0);
    Ok(ExperimentReport::assemble(
        cfg,
        &["log2_bell", "n_log2_n", "refined", "margin"],
        &[],
        rows,
    ))
}
