//! graph6 encoding.
//!
//! A graph6 string is `N(n)` followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! zero-padded to a multiple of six bits. Each group of six bits, most
//! significant first, is written as one byte `63 + value`.
//!
//! `N(n)` is one byte `63 + n` for `n <= 62`, then `126` plus three 6-bit
//! bytes for `n <= 258047`, then `126 126` plus six 6-bit bytes.

use super::{Graph, GraphError};

pub const GRAPH6_HEADER: &str = ">>graph6<<";

const SMALL_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LARGE_MAX: usize = (1 << 36) - 1;

fn err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Encodes `graph` without header or trailing newline.
pub fn emit_graph6(graph: &Graph) -> String {
    let n = graph.n();
    let mut out: Vec<u8> = Vec::new();
    let push_sextets = |out: &mut Vec<u8>, value: usize, count: u32| {
        for k in (0..count).rev() {
            out.push(63 + ((value >> (6 * k)) & 0x3f) as u8);
        }
    };
    if n <= SMALL_MAX {
        out.push(63 + n as u8);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        push_sextets(&mut out, n, 3);
    } else {
        assert!(n <= LARGE_MAX, "graph6 cannot encode {n} vertices");
        out.extend([126, 126]);
        push_sextets(&mut out, n, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; anything else malformed is reported with the
/// byte offset into `text`.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let body = body.strip_suffix('\r').unwrap_or(body);
    let start = if body.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let bytes = &body.as_bytes()[start..];

    for (k, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(
                start + k,
                format!("byte {b:#04x} outside the graph6 range 63..=126"),
            ));
        }
    }
    let sextets = |from: usize, count: usize| -> Result<usize, GraphError> {
        if bytes.len() < from + count {
            return Err(err(start + bytes.len(), "truncated length prefix"));
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };

    let (n, data_at) = match bytes.first() {
        None => return Err(err(start, "empty graph6 string")),
        Some(&b) if b < 126 => ((b - 63) as usize, 1),
        Some(_) if bytes.get(1) == Some(&126) => {
            let n = sextets(2, 6)?;
            if n <= MEDIUM_MAX {
                return Err(err(start, format!("non-canonical 8-byte length prefix for n = {n}")));
            }
            (n, 8)
        }
        Some(_) => {
            let n = sextets(1, 3)?;
            if n <= SMALL_MAX {
                return Err(err(start, format!("non-canonical 4-byte length prefix for n = {n}")));
            }
            (n, 4)
        }
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let want = bit_count.div_ceil(6);
    let data = &bytes[data_at..];
    if data.len() != want {
        return Err(err(
            start + data_at + data.len().min(want),
            format!("expected {want} data bytes for n = {n}, found {}", data.len()),
        ));
    }
    if let Some(&last) = data.last() {
        let pad = want * 6 - bit_count;
        if (last - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(err(start + data_at + want - 1, "nonzero padding bits"));
        }
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.adj.set(i, j, true);
                g.adj.set(j, i, true);
            }
            bit += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::sample_gnp_half;
    use crate::rng::RngSeed;

    #[test]
    fn known_encodings() {
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(emit_graph6(&Graph::complete(2)), "A_");
        // Same 5-vertex graph as the petgraph graph6 test: edges ac, ae, bd, de.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(emit_graph6(&Graph::complete(4)), "C~");
    }

    #[test]
    fn header_and_newline_are_accepted() {
        let g = parse_graph6(">>graph6<<DQc\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(parse_graph6("@\r\n").unwrap(), Graph::empty(1));
    }

    #[test]
    fn medium_length_prefix() {
        let g = sample_gnp_half(70, RngSeed(11));
        let s = emit_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 6]);
        assert_eq!(s.len(), 4 + (70 * 69 / 2usize).div_ceil(6));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(GraphError::Graph6 { offset: 0, .. })));
        assert!(matches!(
            parse_graph6(">>graph6<<"),
            Err(GraphError::Graph6 { offset: 10, .. })
        ));
        // 'A' announces two vertices: one data byte expected.
        assert!(matches!(parse_graph6("A"), Err(GraphError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("A__"), Err(GraphError::Graph6 { .. })));
        // Second byte carries padding bits.
        assert!(matches!(parse_graph6("A`"), Err(GraphError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("A "), Err(GraphError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("~??"), Err(GraphError::Graph6 { .. })));
        assert!(matches!(
            parse_graph6("~??@"),
            Err(GraphError::Graph6 { offset: 0, .. })
        ));
    }
}
