use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Writes the `n m` header followed by one `u v` line per edge, `u < v`.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

fn parse_pair(line: &str, no: usize) -> Result<(usize, usize), EdgeListError> {
    let err = |message: &str| EdgeListError::Parse { line: no, message: message.to_string() };
    let mut it = line.split_ascii_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not a decimal integer"))?;
    let b = b.parse().map_err(|_| err("not a decimal integer"))?;
    Ok((a, b))
}

/// Reads the edge-list format. Edge lines must satisfy `u < v` and the edge
/// count must match the header.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph, EdgeListError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or(EdgeListError::Parse { line: 1, message: "missing header".into() })??;
    let (n, m) = parse_pair(&header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line, i + 2)?;
        if u >= v {
            return Err(EdgeListError::Parse { line: i + 2, message: format!("expected u < v, got {u} {v}") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::Parse {
            line: 1,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::new(n, &edges)?)
}
