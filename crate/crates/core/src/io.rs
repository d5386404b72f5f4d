//! Graph file formats.
//!
//! The native text format is line-based: a header `n m`, then `m` lines
//! `u v` with 0-based endpoints. Writing normalizes edges to `u < v` in
//! lexicographic order, so write -> parse -> write reproduces the bytes
//! exactly. The compact graph6 format is also accepted on input; files may
//! carry `#` comment lines, and multi-graph files separate blocks with blank
//! lines.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph text: {0}")]
    Malformed(String),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Renders a graph in the native text format.
pub fn write_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the native text format.
pub fn parse_text(input: &str) -> Result<Graph, FormatError> {
    let mut lines = meaningful_lines(input);
    let header = lines
        .next()
        .ok_or_else(|| FormatError::Malformed("empty input".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), "vertex count")?;
    let m: usize = parse_field(parts.next(), "edge count")?;
    if parts.next().is_some() {
        return Err(FormatError::Malformed(format!("trailing tokens in header '{header}'")));
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| FormatError::Malformed(format!("expected {m} edge lines")))?;
        let mut ends = line.split_whitespace();
        let u: usize = parse_field(ends.next(), "edge endpoint")?;
        let v: usize = parse_field(ends.next(), "edge endpoint")?;
        if ends.next().is_some() {
            return Err(FormatError::Malformed(format!("trailing tokens in edge line '{line}'")));
        }
        edges.push((u, v));
    }
    if let Some(extra) = lines.next() {
        return Err(FormatError::Malformed(format!("unexpected trailing line '{extra}'")));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    tok.ok_or_else(|| FormatError::Malformed(format!("missing {what}")))?
        .parse()
        .map_err(|_| FormatError::Malformed(format!("bad {what} '{}'", tok.unwrap())))
}

fn meaningful_lines(input: &str) -> impl Iterator<Item = &str> {
    input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a single graph, auto-detecting text versus graph6.
pub fn parse_graph(input: &str) -> Result<Graph, FormatError> {
    let first = meaningful_lines(input)
        .next()
        .ok_or_else(|| FormatError::Malformed("empty input".into()))?;
    if first.split_whitespace().count() >= 2 {
        parse_text(input)
    } else {
        parse_graph6(first)
    }
}

/// Parses a multi-graph file: blocks separated by blank lines, each block a
/// text-format graph or a single graph6 line.
pub fn parse_graph_list(input: &str) -> Result<Vec<Graph>, FormatError> {
    let mut graphs = Vec::new();
    let mut block = String::new();
    for raw in input.lines().chain(std::iter::once("")) {
        let line = raw.trim();
        if line.is_empty() {
            if !block.trim().is_empty() {
                graphs.push(parse_graph(&block)?);
            }
            block.clear();
        } else if !line.starts_with('#') {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(graphs)
}

/// Renders a multi-graph file with blank-line separated text blocks.
pub fn write_graph_list(graphs: &[Graph]) -> String {
    graphs
        .iter()
        .map(write_text)
        .collect::<Vec<_>>()
        .join("\n")
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a graph6 string (orders up to 62).
pub fn parse_graph6(input: &str) -> Result<Graph, FormatError> {
    let s = input.trim().strip_prefix(GRAPH6_HEADER).unwrap_or_else(|| input.trim());
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6("empty string".into()));
    }
    let sextet = |b: u8| -> Result<u64, FormatError> {
        if !(63..=126).contains(&b) {
            return Err(FormatError::Graph6(format!("byte {b} out of printable range")));
        }
        Ok(u64::from(b - 63))
    };
    let n = sextet(bytes[0])? as usize;
    if n == 63 {
        return Err(FormatError::Graph6("multi-byte sizes are not supported".into()));
    }
    let pair_bits = n * n.saturating_sub(1) / 2;
    let want_bytes = pair_bits.div_ceil(6);
    if bytes.len() != 1 + want_bytes {
        return Err(FormatError::Graph6(format!(
            "expected {} payload bytes for order {n}, found {}",
            want_bytes,
            bytes.len() - 1
        )));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0;
    // Column-major pair order: (0,1), (0,2), (1,2), (0,3), ...
    for v in 1..n {
        for u in 0..v {
            let chunk = sextet(bytes[1 + bit_index / 6])?;
            let bit = (chunk >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                edges.push((u, v));
            }
            bit_index += 1;
        }
    }
    // Padding bits must be zero.
    while bit_index < 6 * want_bytes {
        let chunk = sextet(bytes[1 + bit_index / 6])?;
        if (chunk >> (5 - bit_index % 6)) & 1 != 0 {
            return Err(FormatError::Graph6("nonzero padding bit".into()));
        }
        bit_index += 1;
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Encodes a graph as graph6 (orders up to 62).
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.order();
    if n > 62 {
        return Err(FormatError::Graph6(format!("order {n} exceeds single-byte graph6 range")));
    }
    let mut bytes = vec![(n as u8) + 63];
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = (chunk << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                bytes.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((chunk << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_bit_exact() {
        let g = Graph::from_edges(5, &[(1, 0), (2, 4), (0, 3)]).unwrap();
        let text = write_text(&g);
        assert_eq!(text, "5 3\n0 1\n0 3\n2 4\n");
        let back = parse_text(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_text(&back), text);
    }

    #[test]
    fn text_parse_rejects_garbage() {
        assert!(parse_text("").is_err());
        assert!(parse_text("2 1\n0 5\n").is_err()); // label out of range
        assert!(parse_text("2 2\n0 1\n").is_err()); // missing edge line
        assert!(parse_text("2 0\n0 1\n").is_err()); // trailing line
        assert!(parse_text("x y\n").is_err());
    }

    #[test]
    fn text_parse_skips_comments_and_blank_lines() {
        let g = parse_text("# a triangle\n3 3\n\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn graph6_known_vectors() {
        // Derived from the format definition: 'C' = order 4; '~' = all six
        // pair bits set, '?' = none.
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6("C?").unwrap(), Graph::empty(4));
        // P4 = edges 01,12,23 -> bits 101001 -> 41+63 = 'h'.
        assert_eq!(parse_graph6("Ch").unwrap(), Graph::path(4));
        assert_eq!(write_graph6(&Graph::path(4)).unwrap(), "Ch");
    }

    #[test]
    fn graph6_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..12 {
            let g = Graph::random(n, 0.4, &mut rng);
            let s = write_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn graph6_accepts_header_and_rejects_bad_padding() {
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
        assert!(parse_graph6("B~").is_err()); // order 3 has 3 pair bits; '~' sets padding
    }

    #[test]
    fn auto_detection_and_lists() {
        let text = "# family\n3 2\n0 1\n1 2\n\nC~\n\n2 1\n0 1\n";
        let graphs = parse_graph_list(text).unwrap();
        assert_eq!(graphs.len(), 3);
        assert_eq!(graphs[0], Graph::path(3));
        assert_eq!(graphs[1], Graph::complete(4));
        assert_eq!(graphs[2], Graph::complete(2));
        let round = parse_graph_list(&write_graph_list(&graphs)).unwrap();
        assert_eq!(round, graphs);
    }
}
