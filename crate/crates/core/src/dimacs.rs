//! DIMACS edge format: `p edge <n> <m>`, then `e <u> <v>` with 1-based
//! vertex ids. Lines starting with `c` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} edge lines were read")]
    EdgeCount { declared: usize, found: usize },
    #[error("vertices must be 0..n to be written in DIMACS form")]
    NonContiguous,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let syntax = |msg: &str| DimacsError::Syntax { line, msg: msg.to_string() };
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax("duplicate header"));
                }
                match fields.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(syntax("expected `p edge <n> <m>`")),
                }
                let n = num(fields.next(), line)?;
                let m = num(fields.next(), line)?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| syntax("edge before header"))?;
                let u = num(fields.next(), line)?;
                let v = num(fields.next(), line)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(syntax("vertex id out of range 1..=n"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(syntax(&format!("unknown line type {other:?}"))),
        }
        if fields.next().is_some() {
            return Err(DimacsError::Syntax { line, msg: "trailing fields".into() });
        }
    }
    let (n, m) = header.ok_or(DimacsError::MissingHeader)?;
    if edges.len() != m {
        return Err(DimacsError::EdgeCount { declared: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges)?)
}

fn num(field: Option<&str>, line: usize) -> Result<usize, DimacsError> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or(DimacsError::Syntax { line, msg: "expected a non-negative integer".into() })
}

/// Canonical DIMACS text: header, then edges `u < v` in lexicographic order.
pub fn write(g: &Graph) -> Result<String, DimacsError> {
    if g.vertices().iter().enumerate().any(|(i, &v)| i != v) {
        return Err(DimacsError::NonContiguous);
    }
    let mut out = format!("p edge {} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse("c a triangle\np edge 3 3\ne 1 2\ne 2 3\n\ne 1 3\n").unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn write_is_canonical() {
        let g = Graph::new(4, [(2, 3), (1, 0), (0, 3)]).unwrap();
        let text = write(&g).unwrap();
        assert_eq!(text, "p edge 4 3\ne 1 2\ne 1 4\ne 3 4\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse("e 1 2\n").unwrap_err(), DimacsError::Syntax { line: 1, msg: "edge before header".into() });
        assert!(matches!(parse("p edge 2 1\ne 1 3\n"), Err(DimacsError::Syntax { line: 2, .. })));
        assert!(matches!(parse("p edge 2 1\ne 1 1\n"), Err(DimacsError::Graph(GraphError::SelfLoop(0)))));
        assert_eq!(parse("p edge 2 2\ne 1 2\n"), Err(DimacsError::EdgeCount { declared: 2, found: 1 }));
        assert_eq!(parse("c nothing\n"), Err(DimacsError::MissingHeader));
        let sub = Graph::with_vertices([1, 2], [(1, 2)]).unwrap();
        assert_eq!(write(&sub), Err(DimacsError::NonContiguous));
    }
}
