//! Width of graphs under a symmetric cut function.
//!
//! A decomposition tree of `G` induces, through each of its edges, a
//! bipartition of `V(G)` into the leaf sets on either side. The width of the
//! tree under a cut function `f` is the largest `f` over those bipartitions,
//! and the `f`-width of `G` is the smallest width over all decomposition trees.
//! Rank-width uses the GF(2) cut-rank; boolean-width uses `log2` of the number
//! of distinct neighbourhood unions across the cut.
//!
//! Graphs with at most one vertex have no tree edges and width 0 by
//! convention. A graph on two vertices has the single-edge tree and width
//! `f({v0})`.

mod balanced;
mod brute;
mod exact;
mod tree;

use rand::RngCore;
use thiserror::Error;

pub use balanced::{balanced_cut_lower_bound, balanced_range, BalancedBound, DEFAULT_BALANCED_CAP};
pub use brute::{brute_force_f_width, enumerate_decomposition_trees, BRUTE_FORCE_CAP};
pub use exact::{exact_f_width, DEFAULT_EXACT_CAP, MAX_EXACT_N};
pub use tree::DecompositionTree;

use crate::boolspace::{cut_bool_size, BoolSpaceError, DEFAULT_SPACE_CAP};
use crate::graphs::{Cut, Graph};
use crate::rng::RngSeed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WidthError {
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("balanced cuts need at least 3 vertices, graph has {n}")]
    TooSmall { n: usize },
    #[error("malformed decomposition tree: {0}")]
    Structure(String),
    #[error("tree text line {line}: {message}")]
    TreeParse { line: usize, message: String },
    #[error("cut function `{name}` is not symmetric: f({{{cut}}}) = {value} but f(complement) = {complement}")]
    Asymmetric {
        name: String,
        cut: String,
        value: f64,
        complement: f64,
    },
    #[error("cut function `{name}` must vanish on the empty and full sides, got {value}")]
    NotNormalized { name: String, value: f64 },
    #[error("cut function evaluation failed: {0}")]
    Evaluation(String),
}

impl From<BoolSpaceError> for WidthError {
    fn from(e: BoolSpaceError) -> Self {
        WidthError::Evaluation(e.to_string())
    }
}

/// A set function on vertex subsets, required to satisfy `f(X) = f(V \ X)`
/// and `f(empty) = f(V) = 0`. The engines check this contract and report
/// violations as errors.
pub trait CutFunction: Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, graph: &Graph, cut: &Cut) -> Result<f64, WidthError>;

    /// Whether values are always integers (printed without a fractional part).
    fn is_integral(&self) -> bool {
        false
    }
}

/// GF(2) rank of the cut matrix; its width is rank-width.
#[derive(Debug, Clone, Copy, Default)]
pub struct CutRank;

impl CutFunction for CutRank {
    fn name(&self) -> &str {
        "cut-rank"
    }

    fn evaluate(&self, graph: &Graph, cut: &Cut) -> Result<f64, WidthError> {
        Ok(graph.cut_rank(cut) as f64)
    }

    fn is_integral(&self) -> bool {
        true
    }
}

/// `log2` of the boolean row space of the cut matrix; its width is boolean-width.
#[derive(Debug, Clone, Copy)]
pub struct BooleanCut {
    pub cap: u64,
}

impl Default for BooleanCut {
    fn default() -> Self {
        BooleanCut { cap: DEFAULT_SPACE_CAP }
    }
}

impl CutFunction for BooleanCut {
    fn name(&self) -> &str {
        "boolean"
    }

    fn evaluate(&self, graph: &Graph, cut: &Cut) -> Result<f64, WidthError> {
        Ok(cut_bool_size(graph, cut, self.cap)?.log2)
    }
}

/// Wraps a closure as a named cut function.
pub struct FnCut<F> {
    name: String,
    f: F,
}

impl<F> FnCut<F>
where
    F: Fn(&Graph, &Cut) -> f64 + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnCut { name: name.into(), f }
    }
}

impl<F> CutFunction for FnCut<F>
where
    F: Fn(&Graph, &Cut) -> f64 + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, graph: &Graph, cut: &Cut) -> Result<f64, WidthError> {
        Ok((self.f)(graph, cut))
    }
}

/// Width of a decomposition, with the tree and one cut attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthResult {
    pub value: f64,
    pub tree: DecompositionTree,
    /// Side of a maximizing tree edge that does not contain vertex 0.
    pub cut: Cut,
}

/// Cuts checked for symmetry when `n` is too large to check all of them.
const SYMMETRY_SAMPLES: usize = 64;

/// Verifies the cut-function contract on `graph`: `f(empty) = f(V) = 0`, and
/// `f(X) = f(V \ X)` on every cut for `n <= 10`, else on a fixed sample.
pub fn check_cut_function(graph: &Graph, f: &dyn CutFunction) -> Result<(), WidthError> {
    let n = graph.n();
    for side in [Cut::empty(n), Cut::full(n)] {
        let value = f.evaluate(graph, &side)?;
        if value != 0.0 {
            return Err(WidthError::NotNormalized {
                name: f.name().into(),
                value,
            });
        }
    }
    let check = |cut: Cut| -> Result<(), WidthError> {
        let value = f.evaluate(graph, &cut)?;
        let complement = f.evaluate(graph, &cut.complement())?;
        if value != complement {
            return Err(WidthError::Asymmetric {
                name: f.name().into(),
                cut: cut.to_string(),
                value,
                complement,
            });
        }
        Ok(())
    };
    if n <= 10 {
        for mask in 0..1u64 << n {
            check(Cut::from_mask(n, mask))?;
        }
    } else {
        let mut rng = RngSeed(0x5eed).rng();
        for _ in 0..SYMMETRY_SAMPLES {
            let members: Vec<usize> = (0..n).filter(|_| rng.next_u32() & 1 == 1).collect();
            check(Cut::from_vertices(n, &members).expect("sampled vertices in range"))?;
        }
    }
    Ok(())
}

/// Width of `tree` under `f`: the maximum of `f` over the cuts of all tree
/// edges. The first maximizing edge in sorted edge order supplies the cut.
pub fn tree_width_under(
    graph: &Graph,
    tree: &DecompositionTree,
    f: &dyn CutFunction,
) -> Result<WidthResult, WidthError> {
    tree.check_vertex_count(graph.n())?;
    let mut best: Option<(f64, Cut)> = None;
    for (_, cut) in tree.edge_cuts() {
        let value = f.evaluate(graph, &cut)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, cut));
        }
    }
    let (value, cut) = best.unwrap_or((0.0, Cut::empty(graph.n())));
    Ok(WidthResult {
        value,
        tree: tree.clone(),
        cut,
    })
}

/// Exact rank-width, for graphs up to [`DEFAULT_EXACT_CAP`] vertices.
pub fn rankwidth(graph: &Graph) -> Result<WidthResult, WidthError> {
    exact_f_width(graph, &CutRank, DEFAULT_EXACT_CAP)
}

/// Exact boolean-width, for graphs up to [`DEFAULT_EXACT_CAP`] vertices.
pub fn booleanwidth(graph: &Graph) -> Result<WidthResult, WidthError> {
    exact_f_width(graph, &BooleanCut::default(), DEFAULT_EXACT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caterpillar4() -> DecompositionTree {
        DecompositionTree::from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)], &[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn complete_and_edgeless_tree_widths() {
        let t = DecompositionTree::from_edges(
            8,
            &[(0, 5), (1, 5), (5, 6), (2, 6), (6, 7), (3, 7), (4, 7)],
            &[0, 1, 2, 3, 4],
        )
        .unwrap();
        assert_eq!(tree_width_under(&Graph::complete(5), &t, &CutRank).unwrap().value, 1.0);
        assert_eq!(
            tree_width_under(&Graph::complete(5), &t, &BooleanCut::default())
                .unwrap()
                .value,
            1.0
        );
        assert_eq!(tree_width_under(&Graph::empty(5), &t, &CutRank).unwrap().value, 0.0);
        assert_eq!(
            tree_width_under(&Graph::empty(5), &t, &BooleanCut::default())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn path_under_middle_split_caterpillar() {
        // Edge cuts: {1,2,3} rank 1, {1} rank 1, {2} rank 1, {3} rank 1, {2,3} rank 1.
        let res = tree_width_under(&Graph::path(4), &caterpillar4(), &CutRank).unwrap();
        assert_eq!(res.value, 1.0);
        assert_eq!(res.cut.vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn first_maximizing_edge_supplies_the_cut() {
        // Star centred at 3: only cuts separating 3 from many leaves have rank 1,
        // but every nonempty proper cut has rank 1 here; the first edge wins.
        let star = Graph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        let res = tree_width_under(&star, &caterpillar4(), &CutRank).unwrap();
        assert_eq!(res.value, 1.0);
        assert_eq!(res.cut.vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn tree_must_match_graph() {
        let err = tree_width_under(&Graph::path(5), &caterpillar4(), &CutRank).unwrap_err();
        assert!(matches!(err, WidthError::Structure(_)));
    }

    #[test]
    fn tiny_graph_conventions() {
        for n in 0..=1 {
            let res = tree_width_under(&Graph::empty(n), &DecompositionTree::trivial(n).unwrap(), &CutRank).unwrap();
            assert_eq!(res.value, 0.0);
        }
        let res = tree_width_under(&Graph::complete(2), &DecompositionTree::trivial(2).unwrap(), &CutRank).unwrap();
        assert_eq!(res.value, 1.0);
    }

    #[test]
    fn contract_checks() {
        let g = Graph::path(5);
        assert!(check_cut_function(&g, &CutRank).is_ok());
        assert!(check_cut_function(&g, &BooleanCut::default()).is_ok());
        let lopsided = FnCut::new("size", |_: &Graph, c: &Cut| {
            c.len() as f64 * (c.n() - c.len()).min(1) as f64
        });
        assert!(matches!(
            check_cut_function(&g, &lopsided),
            Err(WidthError::Asymmetric { .. })
        ));
        let offset = FnCut::new("offset", |_: &Graph, _: &Cut| 1.0);
        assert!(matches!(
            check_cut_function(&g, &offset),
            Err(WidthError::NotNormalized { .. })
        ));
        let big = crate::graphs::sample_gnp_half(20, RngSeed(1));
        assert!(check_cut_function(&big, &CutRank).is_ok());
        assert!(matches!(
            check_cut_function(&big, &lopsided),
            Err(WidthError::Asymmetric { .. })
        ));
    }
}
