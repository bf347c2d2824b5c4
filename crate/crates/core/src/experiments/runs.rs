use num_bigint::BigUint;

use super::{run_trials, ExperimentConfig, ExperimentError, ExperimentReport, Mode, TrialRecord};
use crate::boolspace::{cut_bool_size, galois_number, DEFAULT_SPACE_CAP};
use crate::gf2::{min_submatrix_rank_exhaustive, min_submatrix_rank_sampled, sample_matrix, submatrix_count};
use crate::graphs::sample_gnp_half;
use crate::rng::{splitmix64, RngSeed};
use crate::widths::{balanced_cut_lower_bound, exact_f_width, BooleanCut, CutRank, DecompositionTree};

/// Submatrix shape studied at size `n`: `floor(n/3)` rows by `ceil(2n/3)` columns.
pub fn submatrix_shape(n: usize) -> (usize, usize) {
    (n / 3, (2 * n).div_ceil(3))
}

/// Minimum rank of `n/3 x 2n/3` submatrices of random `n x n` matrices.
///
/// Per trial the minimum `mu` is exact when the submatrix count is within
/// `caps.submatrix_work` and the mode is exhaustive; otherwise it is the
/// minimum over `caps.sampled_draws` random submatrices and the trial is
/// marked `certified = false`. `below_threshold` is `mu <= floor(n/6)`.
pub fn lemma1_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.require_trials()?;
    if let Some(&n) = cfg.n_values.iter().find(|&&n| n < 3) {
        return Err(ExperimentError::Config(format!("lemma1 needs n >= 3, got {n}")));
    }
    let trials = run_trials(cfg, |n, trial, seed| {
        let matrix = sample_matrix(n, n, seed);
        let (m, k) = submatrix_shape(n);
        let work = submatrix_count(n, n, m, k);
        let exhaustive = cfg.mode == Mode::Exhaustive && work <= cfg.caps.submatrix_work as u128;
        let min = if exhaustive {
            min_submatrix_rank_exhaustive(&matrix, m, k, cfg.caps.submatrix_work as u128)?
        } else {
            min_submatrix_rank_sampled(&matrix, m, k, cfg.caps.sampled_draws, RngSeed(splitmix64(seed.0)))?
        };
        let recheck = matrix.submatrix(&min.rowset, &min.colset)?.rank();
        Ok(TrialRecord::new(n, trial, seed.0)
            .with("m", m)
            .with("k", k)
            .with("work", work as u64)
            .with("mu", min.rank)
            .with("certified", exhaustive)
            .with("witness_ok", recheck == min.rank)
            .with("below_threshold", min.rank <= n / 6)
            .with("rowset", min.rowset.as_slice())
            .with("colset", min.colset.as_slice()))
    })?;
    Ok(ExperimentReport::assemble(
        cfg.clone(),
        &[
            "m",
            "k",
            "work",
            "mu",
            "certified",
            "witness_ok",
            "below_threshold",
            "rowset",
            "colset",
        ],
        &["mu", "below_threshold"],
        trials,
    ))
}

fn check_width_caps(cfg: &ExperimentConfig, min_n: usize) -> Result<(), ExperimentError> {
    cfg.require_trials()?;
    if let Some(&n) = cfg.n_values.iter().find(|&&n| n > cfg.caps.exact_n) {
        return Err(ExperimentError::Config(format!(
            "n = {n} exceeds the exact-width cap of {}",
            cfg.caps.exact_n
        )));
    }
    if let Some(&n) = cfg.n_values.iter().find(|&&n| n < min_n) {
        return Err(ExperimentError::Config(format!("n must be at least {min_n}, got {n}")));
    }
    Ok(())
}

/// Exact rank-width, boolean-width and balanced-cut lower bound of G(n, 1/2) samples.
///
/// Every trial must satisfy `lb <= rw <= max(n - 1, 0)`; a violation aborts the run.
pub fn scaling_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    check_width_caps(cfg, 3)?;
    if let Some(&n) = cfg.n_values.iter().find(|&&n| n > cfg.caps.balanced_n) {
        return Err(ExperimentError::Config(format!(
            "n = {n} exceeds the balanced-cut cap of {}",
            cfg.caps.balanced_n
        )));
    }
    let trials = run_trials(cfg, |n, trial, seed| {
        let g = sample_gnp_half(n, seed);
        let rw = exact_f_width(&g, &CutRank, cfg.caps.exact_n)?;
        let bw = exact_f_width(&g, &BooleanCut::default(), cfg.caps.exact_n)?;
        let lb = balanced_cut_lower_bound(&g, &CutRank, cfg.caps.balanced_n)?;
        if lb.value > rw.value || rw.value > (n - 1) as f64 {
            return Err(ExperimentError::Invariant(format!(
                "n = {n}, trial {trial}: expected lb <= rw <= n - 1, got lb = {}, rw = {}",
                lb.value, rw.value
            )));
        }
        if g.edge_count() > 0 && rw.value < 1.0 {
            return Err(ExperimentError::Invariant(format!(
                "n = {n}, trial {trial}: graph has edges but rank-width {}",
                rw.value
            )));
        }
        Ok(TrialRecord::new(n, trial, seed.0)
            .with("edges", g.edge_count())
            .with("rw", rw.value as u64)
            .with("boolw", bw.value)
            .with("lb", lb.value as u64)
            .with("rw_over_n", rw.value / n as f64)
            .with("rw_cut", rw.cut.vertices().as_slice())
            .with("lb_cut", lb.cut.vertices().as_slice()))
    })?;
    Ok(ExperimentReport::assemble(
        cfg.clone(),
        &["edges", "rw", "boolw", "lb", "rw_over_n", "rw_cut", "lb_cut"],
        &["rw", "boolw", "lb", "rw_over_n"],
        trials,
    ))
}

/// Boolean-width against the subspace bound `log2 G_rw`.
///
/// For both optimal trees (rank and boolean), every edge cut `X` is audited
/// for `|boolean row space of X| <= G_{cut-rank(X)}` in exact integers; the
/// graph-level check is `|space at the boolean witness cut| <= G_rw`.
pub fn boolw_vs_rw_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    check_width_caps(cfg, 1)?;
    let trials = run_trials(cfg, |n, trial, seed| {
        let g = sample_gnp_half(n, seed);
        let rw = exact_f_width(&g, &CutRank, cfg.caps.exact_n)?;
        let bw = exact_f_width(&g, &BooleanCut::default(), cfg.caps.exact_n)?;
        let rank = rw.value as usize;
        let galois = galois_number(rank);

        let (audited, violations) = audit_tree_cuts(&g, [&rw.tree, &bw.tree])?;
        let witness = cut_bool_size(&g, &bw.cut, DEFAULT_SPACE_CAP)?;
        let within = BigUint::from(witness.count) <= galois.0;

        Ok(TrialRecord::new(n, trial, seed.0)
            .with("edges", g.edge_count())
            .with("rw", rank)
            .with("boolw", bw.value)
            .with("log2_galois_rw", galois.log2())
            .with("cuts_audited", audited)
            .with("violations", violations)
            .with("boolw_within_bound", within))
    })?;
    Ok(ExperimentReport::assemble(
        cfg.clone(),
        &[
            "edges",
            "rw",
            "boolw",
            "log2_galois_rw",
            "cuts_audited",
            "violations",
            "boolw_within_bound",
        ],
        &["rw", "boolw", "log2_galois_rw", "violations"],
        trials,
    ))
}

/// Counts edge cuts checked and those with `2^{cut_bool} > G_{cut_rank}`.
fn audit_tree_cuts<'a>(
    g: &crate::graphs::Graph,
    trees: impl IntoIterator<Item = &'a DecompositionTree>,
) -> Result<(usize, usize), ExperimentError> {
    let mut audited = 0;
    let mut violations = 0;
    for tree in trees {
        for (_, cut) in tree.edge_cuts() {
            let space = cut_bool_size(g, &cut, DEFAULT_SPACE_CAP)?;
            let bound = galois_number(g.cut_rank(&cut));
            audited += 1;
            if BigUint::from(space.count) > bound.0 {
                violations += 1;
            }
        }
    }
    Ok((audited, violations))
}
