//! Brute-force width: evaluate every decomposition tree.
//!
//! All `(2n-5)!!` leaf-labelled cubic trees are generated by stepwise
//! insertion: start from the star on leaves 0, 1, 2 and attach leaf `k` by
//! subdividing each existing edge in turn. Each tree is scored with
//! [`tree_width_under`]; no subset tables are shared with the exact engine.

use super::{check_cut_function, tree_width_under, CutFunction, DecompositionTree, WidthError, WidthResult};
use crate::graphs::Graph;

/// `(2 * 8 - 5)!! = 10395` trees at the cap.
pub const BRUTE_FORCE_CAP: usize = 8;

/// Every decomposition tree with leaves `0..n`, in insertion order.
pub fn enumerate_decomposition_trees(n: usize) -> Result<Vec<DecompositionTree>, WidthError> {
    if n > BRUTE_FORCE_CAP {
        return Err(WidthError::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if n <= 2 {
        return Ok(vec![DecompositionTree::trivial(n)?]);
    }
    let mut out = Vec::new();
    // Internal nodes are numbered n, n+1, ... in creation order.
    let star = vec![(0, n), (1, n), (2, n)];
    grow(n, 3, star, &mut out)?;
    Ok(out)
}

fn grow(
    n: usize,
    next_leaf: usize,
    edges: Vec<(usize, usize)>,
    out: &mut Vec<DecompositionTree>,
) -> Result<(), WidthError> {
    if next_leaf == n {
        let leaf_of: Vec<usize> = (0..n).collect();
        out.push(DecompositionTree::from_edges(2 * n - 2, &edges, &leaf_of)?);
        return Ok(());
    }
    let fresh = n + next_leaf - 2;
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        let mut next = edges.clone();
        next[i] = (a, fresh);
        next.push((fresh, b));
        next.push((fresh, next_leaf));
        grow(n, next_leaf + 1, next, out)?;
    }
    Ok(())
}

/// Minimum width over all decomposition trees, for `n <= 8`. Ties keep the
/// first tree in enumeration order.
pub fn brute_force_f_width(graph: &Graph, f: &dyn CutFunction) -> Result<WidthResult, WidthError> {
    let trees = enumerate_decomposition_trees(graph.n())?;
    check_cut_function(graph, f)?;
    let mut best: Option<WidthResult> = None;
    for tree in &trees {
        let res = tree_width_under(graph, tree, f)?;
        if best.as_ref().is_none_or(|b| res.value < b.value) {
            best = Some(res);
        }
    }
    Ok(best.expect("at least one tree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::widths::{BooleanCut, CutRank};
    use std::collections::HashSet;

    fn double_factorial(k: i64) -> usize {
        (1..=k).rev().step_by(2).product::<i64>().max(1) as usize
    }

    #[test]
    fn tree_counts_match_double_factorial() {
        assert_eq!(enumerate_decomposition_trees(0).unwrap().len(), 1);
        assert_eq!(enumerate_decomposition_trees(2).unwrap().len(), 1);
        for n in 3..=BRUTE_FORCE_CAP {
            let trees = enumerate_decomposition_trees(n).unwrap();
            assert_eq!(trees.len(), double_factorial(2 * n as i64 - 5), "n = {n}");
        }
        assert_eq!(enumerate_decomposition_trees(8).unwrap().len(), 10395);
    }

    #[test]
    fn trees_are_distinct_as_split_systems() {
        // Distinct labelled trees have distinct sets of edge bipartitions.
        for n in 4..=7 {
            let trees = enumerate_decomposition_trees(n).unwrap();
            let systems: HashSet<Vec<Vec<usize>>> = trees
                .iter()
                .map(|t| {
                    let mut s: Vec<Vec<usize>> = t.edge_cuts().into_iter().map(|(_, c)| c.vertices()).collect();
                    s.sort();
                    s
                })
                .collect();
            assert_eq!(systems.len(), trees.len());
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(brute_force_f_width(&Graph::complete(4), &CutRank).unwrap().value, 1.0);
        assert_eq!(brute_force_f_width(&Graph::cycle(5), &CutRank).unwrap().value, 2.0);
        assert_eq!(brute_force_f_width(&Graph::path(6), &CutRank).unwrap().value, 1.0);
        let k2 = brute_force_f_width(&Graph::complete(2), &BooleanCut::default()).unwrap();
        assert_eq!(k2.value, 1.0);
        assert_eq!(
            brute_force_f_width(&Graph::empty(9), &CutRank).unwrap_err(),
            WidthError::TooLarge { n: 9, cap: 8 }
        );
    }
}
