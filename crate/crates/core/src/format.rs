//! Line-oriented graph file format.
//!
//! ```text
//! # comment
//! graph <N>
//! edge <u> <v>
//! ...
//! ```
//!
//! Tokens are whitespace separated and `#` starts a comment anywhere on a
//! line. The `graph` header must precede every `edge` line. Vertex labels are
//! 0-based unless [`Indexing::OneBased`] is requested, in which case labels
//! run from 1 to N and are converted on read and write.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

impl Indexing {
    pub fn offset(self) -> usize {
        match self {
            Indexing::ZeroBased => 0,
            Indexing::OneBased => 1,
        }
    }

    /// Converts an external label to a 0-based index; `None` for label 0 in one-based mode.
    pub fn to_internal(self, label: usize) -> Option<usize> {
        label.checked_sub(self.offset())
    }

    pub fn to_external(self, index: usize) -> usize {
        index + self.offset()
    }
}

/// A token with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line into tokens, dropping everything after `#`.
pub fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &content[s..],
            column: content[..s].chars().count() + 1,
        });
    }
    tokens
}

pub fn parse_usize(tok: &Token<'_>, line: usize, what: &str) -> Result<usize> {
    tok.text.parse().map_err(|_| {
        Error::parse(
            line,
            tok.column,
            format!("expected {what} (non-negative integer), found `{}`", tok.text),
        )
    })
}

pub fn parse_f64(tok: &Token<'_>, line: usize, what: &str) -> Result<f64> {
    tok.text
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| {
            Error::parse(
                line,
                tok.column,
                format!("expected {what} (finite real), found `{}`", tok.text),
            )
        })
}

/// Reads a vertex label and converts it to a 0-based index below `n`.
pub fn parse_vertex(tok: &Token<'_>, line: usize, n: usize, indexing: Indexing) -> Result<usize> {
    let label = parse_usize(tok, line, "vertex")?;
    indexing
        .to_internal(label)
        .filter(|&v| v < n)
        .ok_or_else(|| {
            let lo = indexing.offset();
            Error::parse(
                line,
                tok.column,
                format!("vertex {label} outside {lo}..={}", n + lo - 1),
            )
        })
}

pub fn parse_graph(text: &str, indexing: Indexing) -> Result<Graph> {
    let mut header: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        let Some(keyword) = tokens.first() else {
            continue;
        };
        match keyword.text {
            "graph" => {
                if header.is_some() {
                    return Err(Error::parse(line, keyword.column, "duplicate `graph` header"));
                }
                if tokens.len() != 2 {
                    return Err(Error::parse(
                        line,
                        keyword.column,
                        "expected `graph <vertex count>`",
                    ));
                }
                header = Some(parse_usize(&tokens[1], line, "vertex count")?);
            }
            "edge" => {
                let Some(n) = header else {
                    return Err(Error::parse(
                        line,
                        keyword.column,
                        "`edge` before `graph` header",
                    ));
                };
                if tokens.len() != 3 {
                    let column = tokens.get(3).map_or(raw.trim_end().chars().count() + 1, |t| t.column);
                    return Err(Error::parse(line, column, "expected `edge <u> <v>`"));
                }
                let u = parse_vertex(&tokens[1], line, n, indexing)?;
                let v = parse_vertex(&tokens[2], line, n, indexing)?;
                if u == v {
                    return Err(Error::parse(
                        line,
                        tokens[2].column,
                        format!("self-loop on vertex {}", tokens[1].text),
                    ));
                }
                let key = (u.min(v), u.max(v));
                if let Some(first) = seen.insert(key, line) {
                    return Err(Error::parse(
                        line,
                        keyword.column,
                        format!("duplicate edge, first given on line {first}"),
                    ));
                }
                edges.push((u, v));
            }
            other => {
                return Err(Error::parse(
                    line,
                    keyword.column,
                    format!("unknown record `{other}` (expected `graph` or `edge`)"),
                ))
            }
        }
    }
    let n = header.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `graph <N>` header"))?;
    Graph::new(n, &edges)
}

/// Canonical text form: header then edges in ascending `(min, max)` order.
pub fn write_graph(g: &Graph, indexing: Indexing) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "edge {} {}", indexing.to_external(u), indexing.to_external(v));
    }
    out
}

pub fn read_graph_file(path: &Path, indexing: Indexing) -> Result<Graph> {
    let text = read_to_string(path)?;
    parse_graph(&text, indexing)
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# path\ngraph 3   # three agents\nedge 0 1\n\nedge 2 1\n";
        let g = parse_graph(text, Indexing::ZeroBased).unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn one_based_labels() {
        let g = parse_graph("graph 3\nedge 1 2\nedge 2 3\n", Indexing::OneBased).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(write_graph(&g, Indexing::OneBased), "graph 3\nedge 1 2\nedge 2 3\n");
        match parse_graph("graph 3\nedge 0 1\n", Indexing::OneBased) {
            Err(Error::Parse { line: 2, column: 6, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_edge_line() {
        match parse_graph("graph 3\nedge 0\n", Indexing::ZeroBased) {
            Err(Error::Parse { line: 2, column, message }) => {
                assert_eq!(column, 7);
                assert!(message.contains("edge <u> <v>"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let cases = [
            ("edge 0 1\n", 1),
            ("graph 3\ngraph 3\n", 2),
            ("graph x\n", 1),
            ("graph 3\nnode 1\n", 2),
            ("graph 3\nedge 0 0\n", 2),
            ("graph 3\nedge 0 1\nedge 1 0\n", 3),
            ("graph 3\nedge 0 5\n", 2),
            ("# nothing\n", 1),
        ];
        for (text, expected_line) in cases {
            match parse_graph(text, Indexing::ZeroBased) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected_line, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn tokenizer_columns() {
        let toks = tokenize("  edge\t3  4 # c");
        let cols: Vec<_> = toks.iter().map(|t| (t.text, t.column)).collect();
        assert_eq!(cols, vec![("edge", 3), ("3", 8), ("4", 11)]);
    }
}
