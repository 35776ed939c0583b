//! Line-oriented graph text format:
//!
//! ```text
//! c optional comment lines
//! p mcm <n> <m>
//! a <u> <v> <w>      (m times, 1-based ids, w >= 0)
//! ```
//!
//! Blank lines are ignored.

use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing problem line 'p mcm <n> <m>'")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("negative weight at line {line}")]
    NegativeWeight { line: usize },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(
    line: usize,
    name: &str,
    raw: Option<&str>,
) -> Result<T, ParseError> {
    let raw = raw.ok_or_else(|| syntax(line, format!("missing {name}")))?;
    raw.parse()
        .map_err(|_| syntax(line, format!("invalid {name} '{raw}'")))
}

pub fn parse_graph<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(i64, i64, i64)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, text) in reader.lines().enumerate() {
        let text = text?;
        let line = idx + 1;
        let mut parts = text.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                let kind: String = field(line, "problem kind", parts.next())?;
                if kind != "mcm" {
                    return Err(syntax(
                        line,
                        format!("expected problem kind 'mcm', got '{kind}'"),
                    ));
                }
                let n = field(line, "vertex count", parts.next())?;
                let m = field(line, "edge count", parts.next())?;
                header = Some((n, m));
            }
            "a" => {
                let (_, m) = header.ok_or_else(|| syntax(line, "edge before problem line"))?;
                if raw.len() == m {
                    return Err(syntax(line, format!("more than {m} edges")));
                }
                let u = field(line, "source", parts.next())?;
                let v = field(line, "target", parts.next())?;
                let w: i64 = field(line, "weight", parts.next())?;
                if w < 0 {
                    return Err(ParseError::NegativeWeight { line });
                }
                raw.push((u, v, w));
                edge_lines.push(line);
            }
            other => return Err(syntax(line, format!("unknown line type '{other}'"))),
        }
        if parts.next().is_some() {
            return Err(syntax(line, "trailing fields"));
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if raw.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: raw.len(),
        });
    }
    Graph::from_one_based(n, &raw).map_err(|e| match e {
        GraphError::VertexOutOfRange { index, .. } | GraphError::NegativeWeight { index, .. } => {
            ParseError::Invalid {
                line: edge_lines[index],
                source: e,
            }
        }
        other => ParseError::Graph(other),
    })
}

pub fn parse_graph_str(text: &str) -> Result<Graph, ParseError> {
    parse_graph(text.as_bytes())
}

/// Writes `g` in the text format, edges in stored order.
pub fn emit_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p mcm {} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "a {} {} {}", e.source + 1, e.target + 1, e.weight);
    }
    out
}
