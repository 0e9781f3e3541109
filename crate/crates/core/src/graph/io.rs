//! Edge-list text format:
//!
//! ```text
//! # optional comments
//! maxcut <num_vertices> <num_edges>
//! u v w
//! u v        # weight defaults to 1
//! ```
//!
//! Vertices are 0-indexed. Lines whose first non-blank character is `#` are
//! comments; blank lines are ignored.

use std::io::Write;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut header_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match header {
            None => {
                if toks.next() != Some("maxcut") {
                    return Err(parse_err(line_no, "expected header `maxcut <num_vertices> <num_edges>`"));
                }
                let n = field(toks.next(), line_no, "vertex count")?;
                let m = field(toks.next(), line_no, "edge count")?;
                if toks.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens after header"));
                }
                header = Some((n, m));
                header_line = line_no;
            }
            Some(_) => {
                let u: usize = field(toks.next(), line_no, "endpoint")?;
                let v: usize = field(toks.next(), line_no, "endpoint")?;
                let w: u64 = match toks.next() {
                    Some(t) => field(Some(t), line_no, "weight")?,
                    None => 1,
                };
                if toks.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens after edge"));
                }
                edges.push((line_no, u, v, w));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    // Validate edge by edge so errors point at the offending line.
    let mut seen = std::collections::HashSet::new();
    for &(line_no, u, v, _) in &edges {
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex out of range for {n} vertices")));
        }
        if u == v {
            return Err(parse_err(line_no, "self-loop"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line_no, format!("duplicate edge ({u}, {v})")));
        }
    }
    Graph::new(n, edges.into_iter().map(|(_, u, v, w)| (u, v, w)))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "maxcut {} {}", g.num_vertices(), g.num_edges())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
    }
    Ok(())
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

impl Graph {
    /// Serializes in the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        write_edge_list(self, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_default_weight() {
        let g = parse_edge_list("# triangle\nmaxcut 3 3\n0 1\n1 2 4\n# mid\n\n2 0 1\n").unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.total_weight(), 6);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("graph 3 0\n").is_err());
        assert!(parse_edge_list("maxcut 3 2\n0 1\n").is_err());
        assert!(parse_edge_list("maxcut 3 2\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("maxcut 3 1\n1 1\n").is_err());
        assert!(parse_edge_list("maxcut 3 1\n0 3\n").is_err());
        assert!(parse_edge_list("maxcut 3 1\n0 1 -1\n").is_err());
        match parse_edge_list("maxcut 3 2\n0 1\n\n1 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12, 0u64..1000), 0..40)) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .map(|(u, v, w)| (u % n, v % n, w))
                .filter(|&(u, v, _)| u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
        }
    }
}
