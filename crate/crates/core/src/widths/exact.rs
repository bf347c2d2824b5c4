//! Exact optimal width by dynamic programming over vertex subsets.
//!
//! `cost(S)` is the least possible maximum of `f` over the edges of a rooted
//! binary tree whose leaves are `S`, not counting the edge above its root:
//!
//! ```text
//! cost({v}) = 0
//! cost(S)   = min over S = S1 + S2 of max(f(S1), f(S2), cost(S1), cost(S2))
//! ```
//!
//! `f(S1)` is always the cut `(S1, V \ S1)` against the whole vertex set,
//! never against `S`. For example with `V = {0,1,2,3}` and `S = {0,1,2}`,
//! the split `S1 = {0}` is charged `f({0} | {1,2,3})`, which sees the edge
//! from 0 to 3 even though 3 is outside `S`.
//!
//! At the top, the two subtrees of `V = S1 + S2` are joined by a single
//! edge whose cut is `S1`, so `width = min max(f(S1), cost(S1), cost(S2))`.
//! Among optimal splits the one whose `S1` is smallest as an integer mask is
//! kept; scanning only `S1` that omit the highest vertex of `S` covers every
//! unordered split once with its smaller mask.

use super::{tree_width_under, CutFunction, DecompositionTree, WidthError, WidthResult};
use crate::graphs::{Cut, Graph};

/// Default vertex cap for the exact engine.
pub const DEFAULT_EXACT_CAP: usize = 16;

/// Hard limit imposed by the `2^n` tables.
pub const MAX_EXACT_N: usize = 30;

pub fn exact_f_width(graph: &Graph, f: &dyn CutFunction, n_cap: usize) -> Result<WidthResult, WidthError> {
    let n = graph.n();
    let cap = n_cap.min(MAX_EXACT_N);
    if n > cap {
        return Err(WidthError::TooLarge { n, cap });
    }
    if n <= 2 {
        super::check_cut_function(graph, f)?;
        let tree = DecompositionTree::trivial(n)?;
        return tree_width_under(graph, &tree, f);
    }

    let full: u32 = (1u32 << n) - 1;
    let table = cut_table(graph, f)?;

    let mut cost = vec![0f64; 1 << n];
    let mut split = vec![0u32; 1 << n];
    for set in 1..=full {
        if set.count_ones() < 2 {
            continue;
        }
        let high = 1u32 << (31 - set.leading_zeros());
        let rest = set ^ high;
        let top = set == full;
        let mut best = f64::INFINITY;
        let mut best_part = 0u32;
        // Ascending enumeration of the nonempty submasks of `rest`.
        let mut part = 0u32;
        loop {
            part = part.wrapping_sub(rest) & rest;
            if part == 0 {
                break;
            }
            let other = set ^ part;
            let mut value = table[part as usize].max(cost[part as usize]).max(cost[other as usize]);
            if !top {
                value = value.max(table[other as usize]);
            }
            if value < best {
                best = value;
                best_part = part;
            }
        }
        cost[set as usize] = best;
        split[set as usize] = best_part;
    }

    let tree = rebuild(n, full, &split)?;
    let result = tree_width_under(graph, &tree, f)?;
    if result.value != cost[full as usize] {
        return Err(WidthError::Evaluation(format!(
            "cut function `{}` is not deterministic: table gives {} but the rebuilt tree evaluates to {}",
            f.name(),
            cost[full as usize],
            result.value
        )));
    }
    Ok(result)
}

/// `f` on every subset, checked for `f(empty) = 0` and symmetry.
fn cut_table(graph: &Graph, f: &dyn CutFunction) -> Result<Vec<f64>, WidthError> {
    let n = graph.n();
    let full = (1u64 << n) - 1;
    let table = (0..=full)
        .map(|mask| f.evaluate(graph, &Cut::from_mask(n, mask)))
        .collect::<Result<Vec<f64>, _>>()?;
    if table[0] != 0.0 || table[full as usize] != 0.0 {
        return Err(WidthError::NotNormalized {
            name: f.name().into(),
            value: if table[0] != 0.0 {
                table[0]
            } else {
                table[full as usize]
            },
        });
    }
    for mask in 0..=full {
        let (value, complement) = (table[mask as usize], table[(full ^ mask) as usize]);
        if value != complement {
            return Err(WidthError::Asymmetric {
                name: f.name().into(),
                cut: Cut::from_mask(n, mask).to_string(),
                value,
                complement,
            });
        }
    }
    Ok(table)
}

/// Decomposition tree from the recorded splits. The root split's two
/// subtrees are joined by one edge instead of through a degree-2 root.
fn rebuild(n: usize, full: u32, split: &[u32]) -> Result<DecompositionTree, WidthError> {
    let mut edges = Vec::with_capacity(2 * n - 3);
    let mut next_internal = n;

    fn build(set: u32, split: &[u32], edges: &mut Vec<(usize, usize)>, next: &mut usize) -> usize {
        if set.count_ones() == 1 {
            return set.trailing_zeros() as usize;
        }
        let part = split[set as usize];
        let left = build(part, split, edges, next);
        let right = build(set ^ part, split, edges, next);
        let me = *next;
        *next += 1;
        edges.push((me, left));
        edges.push((me, right));
        me
    }

    let part = split[full as usize];
    let left = build(part, split, &mut edges, &mut next_internal);
    let right = build(full ^ part, split, &mut edges, &mut next_internal);
    edges.push((left, right));
    let leaf_of: Vec<usize> = (0..n).collect();
    DecompositionTree::from_edges(next_internal, &edges, &leaf_of)
}
