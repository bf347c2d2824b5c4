//! Plain-text edge lists: a line `n`, then one `u v` line per edge.
//!
//! Blank lines and lines starting with `#` are ignored inside a single list.
//! Duplicate edges collapse. Output lists each edge once as `u v` with
//! `u < v`, in lexicographic order.

use super::{Graph, GraphError};

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::EdgeList {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

/// Parses several edge lists separated by blank lines. Line numbers in
/// errors refer to `text` as a whole.
pub fn parse_edge_list_blocks(text: &str) -> Result<Vec<Graph>, GraphError> {
    let mut graphs = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !block.is_empty() {
                graphs.push(parse_lines(block.drain(..))?);
            }
        } else {
            block.push((i + 1, line));
        }
    }
    if !block.is_empty() {
        graphs.push(parse_lines(block.into_iter())?);
    }
    Ok(graphs)
}

fn parse_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph, GraphError> {
    let mut lines = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing vertex count"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|e| err(hline, format!("bad vertex count {:?}: {e}", header.trim())))?;
    let mut g = Graph::empty(n);
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected `u v`, found {body:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| err(line, format!("bad vertex {s:?}: {e}")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        g.add_edge(u, v).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn emit_edge_list(graph: &Graph) -> String {
    let mut out = format!("{}\n", graph.n());
    for (u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_path() {
        assert_eq!(parse_edge_list("3\n0 1\n1 2").unwrap(), Graph::path(3));
        assert_eq!(parse_edge_list("3\n1 0\n\n# dup\n0 1\n2 1\n").unwrap(), Graph::path(3));
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse_edge_list("2\n0 0").unwrap_err(), err(2, "self-loop at vertex 0"));
        assert!(matches!(
            parse_edge_list("2\n0 1\n0 2"),
            Err(GraphError::EdgeList { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("2\n0 1 1"),
            Err(GraphError::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("x"),
            Err(GraphError::EdgeList { line: 1, .. })
        ));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn emits_sorted_edges() {
        let g = Graph::from_edges(4, &[(3, 1), (2, 0), (0, 1)]).unwrap();
        assert_eq!(emit_edge_list(&g), "4\n0 1\n0 2\n1 3\n");
        assert_eq!(emit_edge_list(&Graph::empty(2)), "2\n");
    }

    #[test]
    fn blocks() {
        let gs = parse_edge_list_blocks("3\n0 1\n\n\n2\n0 1\n\n1\n").unwrap();
        assert_eq!(
            gs,
            vec![
                Graph::from_edges(3, &[(0, 1)]).unwrap(),
                Graph::complete(2),
                Graph::empty(1)
            ]
        );
        assert!(matches!(
            parse_edge_list_blocks("3\n0 1\n\n2\n0 5\n"),
            Err(GraphError::EdgeList { line: 5, .. })
        ));
    }
}
