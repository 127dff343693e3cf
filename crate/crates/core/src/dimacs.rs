//! DIMACS-style instance files.
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>        (1-indexed)
//! n <v> <weight>   (optional, default weight 1)
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::ParseError;
use crate::graph::{Vertex, Weight, WeightedGraph};

pub fn parse_dimacs(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen = HashSet::new();
    let mut weights: Vec<Option<Weight>> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        let malformed = |message: &str| ParseError::Malformed {
            line,
            message: message.to_string(),
        };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(malformed("second `p` line"));
                }
                if tok.next() != Some("edge") {
                    return Err(malformed("expected `p edge <n> <m>`"));
                }
                let n = number(tok.next(), line, "vertex count")?;
                let m = number(tok.next(), line, "edge count")?;
                if tok.next().is_some() {
                    return Err(malformed("trailing tokens"));
                }
                header = Some((n, m));
                weights = vec![None; n];
            }
            "e" | "n" => {
                let Some((n, _)) = header else {
                    return Err(ParseError::MissingHeader);
                };
                let a = vertex(tok.next(), n, line)?;
                if kind == "e" {
                    let b = vertex(tok.next(), n, line)?;
                    if tok.next().is_some() {
                        return Err(malformed("trailing tokens"));
                    }
                    if a == b {
                        return Err(ParseError::SelfLoop {
                            line,
                            vertex: a + 1,
                        });
                    }
                    if !seen.insert((a.min(b), a.max(b))) {
                        return Err(ParseError::DuplicateEdge {
                            line,
                            u: a + 1,
                            v: b + 1,
                        });
                    }
                    edges.push((a, b));
                } else {
                    let w = tok.next().ok_or_else(|| malformed("missing weight"))?;
                    if tok.next().is_some() {
                        return Err(malformed("trailing tokens"));
                    }
                    if w.starts_with('-') && w[1..].parse::<u64>().is_ok() {
                        return Err(ParseError::NegativeWeight {
                            line,
                            weight: w.to_string(),
                        });
                    }
                    let w: Weight = w
                        .parse()
                        .map_err(|_| malformed("weight is not an integer"))?;
                    if weights[a].replace(w).is_some() {
                        return Err(malformed("weight given twice"));
                    }
                }
            }
            other => return Err(malformed(&format!("unknown line type `{other}`"))),
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    let weights = weights.into_iter().map(|w| w.unwrap_or(1)).collect();
    Ok(WeightedGraph::new(n, &edges, weights).expect("edges validated while parsing"))
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::Malformed {
            line,
            message: format!("bad {what}"),
        })
}

fn vertex(tok: Option<&str>, n: usize, line: usize) -> Result<Vertex, ParseError> {
    let v = number(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(ParseError::Malformed {
            line,
            message: format!("vertex {v} outside 1..={n}"),
        });
    }
    Ok(v - 1)
}

/// Edges in ascending order, weight lines only for weights other than 1.
pub fn emit_dimacs(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for (v, &w) in g.weights().iter().enumerate() {
        if w != 1 {
            writeln!(out, "n {} {}", v + 1, w).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_path() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.weights(), &[1, 1, 1]);
        let g = parse_dimacs("c weighted\np edge 3 2\ne 1 2\ne 2 3\nn 2 5\n").unwrap();
        assert_eq!(g.weight(1), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 1 1\n"),
            Err(ParseError::SelfLoop { line: 2, vertex: 1 })
        );
        assert_eq!(
            parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n"),
            Err(ParseError::DuplicateEdge {
                line: 3,
                u: 2,
                v: 1
            })
        );
        assert_eq!(
            parse_dimacs("p edge 2 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        );
        assert_eq!(parse_dimacs("e 1 2\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_dimacs(""), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_dimacs("p edge 2 0\nn 1 -3\n"),
            Err(ParseError::NegativeWeight { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 0\nx 1\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn round_trip() {
        let g = WeightedGraph::new(4, &[(2, 3), (0, 1)], vec![1, 7, 0, 1]).unwrap();
        let text = emit_dimacs(&g);
        assert_eq!(text, "p edge 4 2\ne 1 2\ne 3 4\nn 2 7\nn 3 0\n");
        assert_eq!(parse_dimacs(&text).unwrap(), g);
        assert_eq!(emit_dimacs(&WeightedGraph::empty()), "p edge 0 0\n");
    }
}
