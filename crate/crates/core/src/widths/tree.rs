//! Decomposition trees: unrooted trees whose leaves are the graph's vertices
//! and whose internal nodes all have degree three.
//!
//! Trees are kept in a canonical numbering. Node `v < n` is the leaf for
//! vertex `v`; nodes `n..2n-2` are internal, and every adjacency list is
//! sorted. Two trees compare equal iff they are the same labelled tree with
//! the same internal numbering.
//!
//! Text form:
//!
//! ```text
//! tree 4
//! i0 0 1 i1
//! i1 2 3 i0
//! ```
//!
//! The header gives the vertex count. Each following line names an internal
//! node `i<k>` and its three neighbours; plain integers are leaves named by
//! vertex index. Trees on at most two vertices are unique and have no body.

use std::fmt;

use super::WidthError;
use crate::graphs::Cut;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecompositionTree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

fn structural(msg: impl Into<String>) -> WidthError {
    WidthError::Structure(msg.into())
}

impl DecompositionTree {
    /// Builds and validates a tree.
    ///
    /// `leaf_of[v]` is the node carrying vertex `v`; nodes are `0..node_count`.
    /// The result is renumbered canonically.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)], leaf_of: &[usize]) -> Result<Self, WidthError> {
        let n = leaf_of.len();
        let expected_nodes = match n {
            0 => 0,
            1 => 1,
            _ => 2 * n - 2,
        };
        if node_count != expected_nodes {
            return Err(structural(format!(
                "a tree for {n} vertices has {expected_nodes} nodes, got {node_count}"
            )));
        }
        if edges.len() != node_count.saturating_sub(1) {
            return Err(structural(format!(
                "a tree on {node_count} nodes has {} edges, got {}",
                node_count.saturating_sub(1),
                edges.len()
            )));
        }

        let mut vertex_at = vec![None; node_count];
        for (v, &node) in leaf_of.iter().enumerate() {
            if node >= node_count {
                return Err(structural(format!("vertex {v} mapped to missing node {node}")));
            }
            if let Some(w) = vertex_at[node].replace(v) {
                return Err(structural(format!("vertices {w} and {v} share leaf node {node}")));
            }
        }

        let mut adj = vec![Vec::new(); node_count];
        for &(a, b) in edges {
            if a >= node_count || b >= node_count || a == b {
                return Err(structural(format!("invalid tree edge ({a}, {b})")));
            }
            if adj[a].contains(&b) {
                return Err(structural(format!("repeated tree edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }

        if n >= 2 {
            for (node, nbrs) in adj.iter().enumerate() {
                let want = if vertex_at[node].is_some() { 1 } else { 3 };
                if nbrs.len() != want {
                    let kind = if want == 1 { "leaf" } else { "internal" };
                    return Err(structural(format!(
                        "{kind} node {node} has degree {}, expected {want}",
                        nbrs.len()
                    )));
                }
            }
        }
        if node_count > 0 {
            let mut seen = vec![false; node_count];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !std::mem::replace(&mut seen[w], true) {
                        stack.push(w);
                    }
                }
            }
            if let Some(lost) = seen.iter().position(|s| !s) {
                return Err(structural(format!("node {lost} is disconnected")));
            }
        }

        // Canonical numbering: leaves first by vertex, internal nodes in original order.
        let mut new_id = vec![usize::MAX; node_count];
        for (v, &node) in leaf_of.iter().enumerate() {
            new_id[node] = v;
        }
        for (next, id) in (n..).zip(new_id.iter_mut().filter(|id| **id == usize::MAX)) {
            *id = next;
        }
        let mut canon = vec![Vec::new(); node_count];
        for (old, nbrs) in adj.into_iter().enumerate() {
            let mut mapped: Vec<usize> = nbrs.into_iter().map(|w| new_id[w]).collect();
            mapped.sort_unstable();
            canon[new_id[old]] = mapped;
        }
        Ok(DecompositionTree { n, adj: canon })
    }

    /// The unique tree on at most two vertices.
    pub fn trivial(n: usize) -> Result<Self, WidthError> {
        match n {
            0 => Self::from_edges(0, &[], &[]),
            1 => Self::from_edges(1, &[], &[0]),
            2 => Self::from_edges(2, &[(0, 1)], &[0, 1]),
            _ => Err(structural(format!("a tree on {n} vertices is not unique"))),
        }
    }

    /// Number of leaves, i.e. of graph vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn leaf_node(&self, vertex: usize) -> usize {
        assert!(vertex < self.n, "vertex {vertex} has no leaf");
        vertex
    }

    pub fn vertex_at(&self, node: usize) -> Option<usize> {
        (node < self.n).then_some(node)
    }

    /// Tree edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// For each edge in [`edges`](Self::edges) order, the leaf set of the side
    /// that does not contain vertex 0.
    pub fn edge_cuts(&self) -> Vec<((usize, usize), Cut)> {
        let n = self.n;
        if self.adj.len() < 2 {
            return Vec::new();
        }
        // Root at the leaf of vertex 0 and collect leaf sets bottom-up.
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut order = Vec::with_capacity(self.adj.len());
        let mut stack = vec![0usize];
        parent[0] = 0;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut below: Vec<Cut> = (0..self.adj.len())
            .map(|node| {
                if node < n {
                    Cut::from_vertices(n, &[node]).expect("leaf vertex in range")
                } else {
                    Cut::empty(n)
                }
            })
            .collect();
        for &u in order.iter().rev().filter(|&&u| u != 0) {
            let merged = below[parent[u]].union(&below[u]);
            below[parent[u]] = merged;
        }
        self.edges()
            .into_iter()
            .map(|(a, b)| {
                let child = if parent[b] == a { b } else { a };
                ((a, b), below[child].clone())
            })
            .collect()
    }

    /// Checks that the tree decomposes a graph on `n` vertices.
    pub fn check_vertex_count(&self, n: usize) -> Result<(), WidthError> {
        if self.n != n {
            return Err(structural(format!(
                "tree has {} leaves but the graph has {n} vertices",
                self.n
            )));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self, WidthError> {
        let perr = |line: usize, message: String| WidthError::TreeParse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing `tree <n>` header".into()))?;
        let n: usize = header
            .strip_prefix("tree ")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| perr(hline, format!("expected `tree <n>`, found {header:?}")))?;
        let internal = n.saturating_sub(2);
        let body: Vec<(usize, &str)> = lines.collect();
        if n <= 2 {
            if let Some(&(line, _)) = body.first() {
                return Err(perr(line, format!("a tree on {n} vertices has no internal nodes")));
            }
            return Self::trivial(n);
        }
        if body.len() != internal {
            let line = body.get(internal).map_or(hline, |b| b.0);
            return Err(perr(
                line,
                format!("expected {internal} internal node lines, found {}", body.len()),
            ));
        }

        let node_of = |line: usize, tok: &str| -> Result<usize, WidthError> {
            if let Some(k) = tok.strip_prefix('i') {
                let k: usize = k.parse().map_err(|_| perr(line, format!("bad node name {tok:?}")))?;
                if k >= internal {
                    return Err(perr(line, format!("internal node {tok} out of range")));
                }
                Ok(n + k)
            } else {
                let v: usize = tok.parse().map_err(|_| perr(line, format!("bad node name {tok:?}")))?;
                if v >= n {
                    return Err(perr(line, format!("leaf {v} out of range")));
                }
                Ok(v)
            }
        };

        let mut lists: Vec<Option<Vec<usize>>> = vec![None; internal];
        for &(line, body) in &body {
            let toks: Vec<&str> = body.split_whitespace().collect();
            let [name, a, b, c] = toks[..] else {
                return Err(perr(line, format!("expected `i<k> a b c`, found {body:?}")));
            };
            let me = node_of(line, name)?;
            if me < n {
                return Err(perr(
                    line,
                    format!("line must start with an internal node, found {name}"),
                ));
            }
            let nbrs = vec![node_of(line, a)?, node_of(line, b)?, node_of(line, c)?];
            if lists[me - n].replace(nbrs).is_some() {
                return Err(perr(line, format!("internal node {name} listed twice")));
            }
        }

        let mut edges = Vec::new();
        for (k, nbrs) in lists.iter().enumerate() {
            let me = n + k;
            for &w in nbrs.as_ref().expect("all internal lines present") {
                if w < n {
                    edges.push((me, w));
                } else {
                    let back = lists[w - n].as_ref().expect("all internal lines present");
                    if !back.contains(&me) {
                        return Err(perr(body[0].0 + k, format!("i{k} lists i{} but not conversely", w - n)));
                    }
                    if me < w {
                        edges.push((me, w));
                    }
                }
            }
        }
        let leaf_of: Vec<usize> = (0..n).collect();
        Self::from_edges(2 * n - 2, &edges, &leaf_of)
    }
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tree {}", self.n)?;
        if self.n <= 2 {
            return Ok(());
        }
        let name = |node: usize| {
            if node < self.n {
                node.to_string()
            } else {
                format!("i{}", node - self.n)
            }
        };
        for node in self.n..self.adj.len() {
            let nbrs: Vec<String> = self.adj[node].iter().map(|&w| name(w)).collect();
            writeln!(f, "{} {}", name(node), nbrs.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecompositionTree({:?})", self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caterpillar4() -> DecompositionTree {
        // Leaves 0,1 on internal node 4; leaves 2,3 on internal node 5.
        DecompositionTree::from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)], &[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let t = caterpillar4();
        let text = t.to_text();
        assert_eq!(text, "tree 4\ni0 0 1 i1\ni1 2 3 i0\n");
        assert_eq!(DecompositionTree::parse_text(&text).unwrap(), t);
        for n in 0..=2 {
            let t = DecompositionTree::trivial(n).unwrap();
            assert_eq!(t.to_text(), format!("tree {n}\n"));
            assert_eq!(DecompositionTree::parse_text(&t.to_text()).unwrap(), t);
        }
    }

    #[test]
    fn canonical_renumbering() {
        // Same caterpillar with shuffled node ids.
        let t = DecompositionTree::from_edges(6, &[(5, 0), (3, 0), (0, 1), (2, 1), (4, 1)], &[5, 3, 2, 4]).unwrap();
        assert_eq!(t, caterpillar4());
    }

    #[test]
    fn edge_cuts_exclude_vertex_zero() {
        let cuts = caterpillar4().edge_cuts();
        let sides: Vec<Vec<usize>> = cuts.iter().map(|(_, c)| c.vertices()).collect();
        assert_eq!(
            cuts.iter().map(|(e, _)| *e).collect::<Vec<_>>(),
            vec![(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)]
        );
        assert_eq!(sides, vec![vec![1, 2, 3], vec![1], vec![2], vec![3], vec![2, 3]]);
        assert_eq!(
            DecompositionTree::trivial(2).unwrap().edge_cuts()[0].1.vertices(),
            vec![1]
        );
        assert!(DecompositionTree::trivial(1).unwrap().edge_cuts().is_empty());
    }

    #[test]
    fn structural_errors() {
        let bad_degree = DecompositionTree::from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 4)], &[0, 1, 2, 3]);
        assert!(matches!(bad_degree, Err(WidthError::Structure(_))));
        let shared_leaf = DecompositionTree::from_edges(6, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)], &[0, 0, 2, 3]);
        assert!(matches!(shared_leaf, Err(WidthError::Structure(_))));
        let wrong_count = DecompositionTree::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)], &[0, 1, 2, 3]);
        assert!(matches!(wrong_count, Err(WidthError::Structure(_))));
        // Two components: a triangle of internal nodes cannot occur with the right degrees,
        // so use a repeated edge.
        let repeated = DecompositionTree::from_edges(2, &[(0, 1), (1, 0)], &[0, 1]);
        assert!(matches!(repeated, Err(WidthError::Structure(_))));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "tre 4\n",
            "tree 4\ni0 0 1 i1\n",
            "tree 4\ni0 0 1 i1\ni1 2 3\n",
            "tree 4\ni0 0 1 i1\ni0 2 3 i1\n",
            "tree 4\ni0 0 1 i1\ni1 2 3 0\n",
            "tree 4\ni0 0 1 i1\ni1 2 3 i7\n",
            "tree 2\ni0 0 1 1\n",
            "tree 4\n0 0 1 i1\ni1 2 3 i0\n",
        ] {
            assert!(DecompositionTree::parse_text(bad).is_err(), "{bad:?} should not parse");
        }
    }
}
