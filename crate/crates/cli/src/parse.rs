//! Graph file format: comment lines start with `#`, then a header
//! `p sp <n> <m>`, then exactly `m` lines `a <src> <dst> <weight>` with
//! 0-based ids and decimal weights (parsed exactly in rational mode).

use std::io::{self, Write};

use negsssp_core::{Graph, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },

    #[error("header says {expected} edges, found {got}")]
    CountMismatch { expected: usize, got: usize },

    #[error("missing 'p sp <n> <m>' header")]
    MissingHeader,

    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        source: negsssp_core::Error,
    },
}

pub fn parse_graph<S: Scalar>(input: &str) -> Result<Graph<S>, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, S)> = Vec::new();
    let mut first_edge_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match (header.is_some(), fields[0]) {
            (false, "p") => {
                if fields.len() != 4 || fields[1] != "sp" {
                    return Err(ParseError::Malformed {
                        line,
                        msg: "expected 'p sp <n> <m>'".into(),
                    });
                }
                let n = fields[2].parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: "vertex count is not an integer".into(),
                })?;
                let m = fields[3].parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: "edge count is not an integer".into(),
                })?;
                header = Some((n, m));
            }
            (false, _) => return Err(ParseError::MissingHeader),
            (true, "a") => {
                if fields.len() != 4 {
                    return Err(ParseError::Malformed {
                        line,
                        msg: "expected 'a <src> <dst> <weight>'".into(),
                    });
                }
                let src: usize = fields[1].parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: "source id is not an integer".into(),
                })?;
                let dst: usize = fields[2].parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: "destination id is not an integer".into(),
                })?;
                let w = S::parse_decimal(fields[3]).ok_or_else(|| ParseError::Malformed {
                    line,
                    msg: format!("bad weight '{}'", fields[3]),
                })?;
                if edges.is_empty() {
                    first_edge_line = line;
                }
                edges.push((src, dst, w));
            }
            (true, _) => {
                return Err(ParseError::Malformed {
                    line,
                    msg: format!("unexpected record '{}'", fields[0]),
                })
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::CountMismatch { expected: m, got: edges.len() });
    }
    Graph::build(n, &edges).map_err(|e| ParseError::Graph { line: first_edge_line, source: e })
}

pub fn write_graph<S: Scalar>(g: &Graph<S>, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "p sp {} {}", g.n(), g.num_edges())?;
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.src, e.dst, e.weight)?;
    }
    Ok(())
}
