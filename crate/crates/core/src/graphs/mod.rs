//! Simple undirected graphs, vertex bipartitions, and cut-rank.

mod edgelist;
mod graph6;

use std::fmt;

use thiserror::Error;

pub use edgelist::{emit_edge_list, parse_edge_list, parse_edge_list_blocks};
pub use graph6::{emit_graph6, parse_graph6, GRAPH6_HEADER};

use crate::boolspace::low_bits;
use crate::gf2::{rank_u64, BitMatrix};
use crate::rng::{BitStream, RngSeed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

/// Simple undirected graph on vertices `0..n`, stored as a symmetric
/// adjacency matrix with zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitMatrix,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: BitMatrix::zeros(n, n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        Graph {
            adj: BitMatrix::from_fn(n, n, |i, j| i != j),
        }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph {
            adj: BitMatrix::from_fn(n, n, |i, j| i.abs_diff(j) == 1),
        }
    }

    /// Cycle on `n >= 3` vertices; smaller `n` gives the path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1).expect("endpoints in range");
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj.set(u, v, true);
        self.adj.set(v, u, true);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (u + 1..n).filter(move |&v| self.adj.get(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.count_ones() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&u| self.adj.get(v, u))
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut seen = vec![false; n];
        assert_eq!(perm.len(), n, "permutation length");
        for &p in perm {
            assert!(p < n && !std::mem::replace(&mut seen[p], true), "not a permutation");
        }
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permuted edge is valid");
        }
        g
    }

    /// Subgraph induced by `vertices`, renumbered in ascending order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&vertex) = vs.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex, n: self.n() });
        }
        Ok(Graph {
            adj: self.adj.submatrix(&vs, &vs).expect("indices checked"),
        })
    }

    /// Cut matrix `A[X, V \ X]`: rows are the vertices of `X` in ascending
    /// order, columns the vertices of the complement in ascending order.
    ///
    /// # Panics
    /// Panics if the cut was built for a different vertex count.
    pub fn cut_matrix(&self, cut: &Cut) -> BitMatrix {
        self.check_cut(cut);
        let side = cut.vertices();
        let other = cut.complement().vertices();
        self.adj.submatrix(&side, &other).expect("cut vertices are in range")
    }

    /// GF(2) rank of the cut matrix.
    ///
    /// # Panics
    /// Panics if the cut was built for a different vertex count.
    pub fn cut_rank(&self, cut: &Cut) -> usize {
        self.check_cut(cut);
        if self.n() <= 64 {
            // Masking rows to the complement leaves the rank of the cut matrix unchanged.
            let other = !cut.mask_u64() & low_bits(self.n());
            rank_u64(cut.iter().map(|v| self.adj.row_words(v)[0] & other))
        } else {
            self.cut_matrix(cut).rank()
        }
    }

    fn check_cut(&self, cut: &Cut) {
        assert_eq!(
            cut.n(),
            self.n(),
            "cut built for {} vertices used on a graph with {}",
            cut.n(),
            self.n()
        );
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Free function form of [`Graph::cut_matrix`].
pub fn cut_matrix(graph: &Graph, cut: &Cut) -> BitMatrix {
    graph.cut_matrix(cut)
}

/// Free function form of [`Graph::cut_rank`].
pub fn cut_rank(graph: &Graph, cut: &Cut) -> usize {
    graph.cut_rank(cut)
}

/// Graph from G(n, 1/2).
///
/// Edge bits are drawn in upper-triangle column-major order
/// (`(0,1), (0,2), (1,2), (0,3), ...`), the same order graph6 uses.
pub fn sample_gnp_half(n: usize, seed: RngSeed) -> Graph {
    let mut bits = BitStream::new(seed.rng());
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if bits.next_bit() {
                g.adj.set(i, j, true);
                g.adj.set(j, i, true);
            }
        }
    }
    g
}

/// One side `X` of a bipartition `(X, V \ X)` of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    n: usize,
    bits: Vec<u64>,
}

impl Cut {
    pub fn empty(n: usize) -> Self {
        Cut {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        Cut::empty(n).complement()
    }

    pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut cut = Cut::empty(n);
        for &v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            cut.bits[v / 64] |= 1 << (v % 64);
        }
        Ok(cut)
    }

    /// Cut from a bit mask over `0..n`, for `n <= 64`.
    ///
    /// # Panics
    /// Panics if `n > 64` or `mask` has bits at or above `n`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        assert_eq!(mask & !low_bits(n), 0, "mask has bits outside 0..{n}");
        let mut cut = Cut::empty(n);
        if n > 0 {
            cut.bits[0] = mask;
        }
        cut
    }

    /// The side as a bit mask, for `n <= 64`.
    ///
    /// # Panics
    /// Panics if `n > 64`.
    pub fn mask_u64(&self) -> u64 {
        assert!(self.n <= 64, "mask_u64 needs n <= 64");
        self.bits.first().copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.bits[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn complement(&self) -> Cut {
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        if let Some(last) = bits.last_mut() {
            let rem = self.n % 64;
            if rem != 0 {
                *last &= (1u64 << rem) - 1;
            }
        }
        Cut { n: self.n, bits }
    }

    pub fn union(&self, other: &Cut) -> Cut {
        assert_eq!(self.n, other.n);
        Cut {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for Cut {
    /// Space-separated vertex list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut({}; {{{}}})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_edge_cases() {
        assert_eq!(sample_gnp_half(0, RngSeed(3)).edge_count(), 0);
        assert_eq!(sample_gnp_half(1, RngSeed(3)).edge_count(), 0);
        assert_eq!(sample_gnp_half(12, RngSeed(3)), sample_gnp_half(12, RngSeed(3)));
        let g = sample_gnp_half(12, RngSeed(3));
        for v in 0..12 {
            assert!(!g.has_edge(v, v));
            for u in 0..12 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn cut_matrix_examples() {
        let k4 = Graph::complete(4);
        let x = Cut::from_vertices(4, &[0, 1]).unwrap();
        assert_eq!(k4.cut_matrix(&x), BitMatrix::ones(2, 2));
        assert_eq!(Graph::empty(4).cut_matrix(&x), BitMatrix::zeros(2, 2));
        assert_eq!(Graph::path(4).cut_matrix(&x), BitMatrix::from_rows(&[[0, 0], [1, 0]]));
        let m = k4.cut_matrix(&Cut::empty(4));
        assert_eq!((m.rows(), m.cols()), (0, 4));
    }

    #[test]
    fn cut_rank_examples() {
        let g = sample_gnp_half(7, RngSeed(9));
        assert_eq!(g.cut_rank(&Cut::empty(7)), 0);
        assert_eq!(g.cut_rank(&Cut::full(7)), 0);
        for n in 2..7 {
            let kn = Graph::complete(n);
            for mask in 1..(1u64 << n) - 1 {
                assert_eq!(kn.cut_rank(&Cut::from_mask(n, mask)), 1);
            }
        }
        let x = Cut::from_vertices(4, &[0, 1]).unwrap();
        assert_eq!(cut_rank(&Graph::path(4), &x), 1);
    }

    #[test]
    fn cut_rank_on_large_graphs_matches_matrix_rank() {
        let g = sample_gnp_half(80, RngSeed(2));
        let x = Cut::from_vertices(80, &(0..80).step_by(3).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.cut_rank(&x), g.cut_matrix(&x).rank());
        assert_eq!(g.cut_rank(&x), g.cut_rank(&x.complement()));
    }

    #[test]
    fn cut_set_operations() {
        let x = Cut::from_vertices(70, &[0, 65, 69]).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.complement().len(), 67);
        assert_eq!(x.complement().complement(), x);
        assert!(x.contains(65) && !x.contains(66) && !x.contains(200));
        assert_eq!(x.to_string(), "0 65 69");
        assert_eq!(x.union(&x.complement()), Cut::full(70));
        assert!(Cut::from_vertices(3, &[3]).is_err());
        assert!(Cut::empty(0).is_empty());
        assert_eq!(Cut::full(0), Cut::empty(0));
    }

    #[test]
    fn constructors_and_relabeling() {
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::path(5).edge_count(), 4);
        assert_eq!(Graph::complete(6).edge_count(), 15);
        assert_eq!(Graph::from_edges(3, &[(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, n: 3 }
        );
        let p = Graph::path(4).relabel(&[3, 2, 1, 0]);
        assert_eq!(p, Graph::path(4));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.neighbors(0).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(star.induced_subgraph(&[1, 2, 3]).unwrap(), Graph::empty(3));
    }
}
