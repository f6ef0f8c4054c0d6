//! JSON files for partitions, layerings and generator metadata.
//!
//! A partition file names its host graph either inline or by the path of an
//! edge-list file, resolved against the partition file's directory:
//!
//! ```json
//! { "host": { "n": 2, "edges": [[0, 1]] }, "parts": { "0": [0, 2], "1": [1] } }
//! { "host": "host.el", "parts": { "0": [0, 1, 3] } }
//! ```
//!
//! Host vertices missing from `parts` get empty parts.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::GridRole;
use crate::graph::{read_edge_list, write_edge_list, EdgeListError, Graph, Vertex, VertexSet};
use crate::products::{HPartition, Layering, PartitionError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    EdgeList { path: String, source: EdgeListError },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Partition(#[from] PartitionError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InlineGraph {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<&Graph> for InlineGraph {
    fn from(g: &Graph) -> Self {
        InlineGraph { n: g.vertex_count(), edges: g.edges().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HostSpec {
    Inline(InlineGraph),
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub host: HostSpec,
    pub parts: BTreeMap<String, Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeringFile {
    pub layers: Vec<Vec<Vertex>>,
}

/// Sidecar written next to a generated `G_h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhMeta {
    pub height: usize,
}

/// Sidecar written next to a generated subdivided grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridMeta {
    pub x: usize,
    pub y: usize,
    pub divisions: Vec<usize>,
    pub roles: Vec<GridRole>,
}

impl PartitionFile {
    pub fn new(host: HostSpec, p: &HPartition) -> Self {
        let parts = p
            .parts()
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(x, b)| (x.to_string(), b.to_vec()))
            .collect();
        PartitionFile { host, parts }
    }

    pub fn inline(p: &HPartition) -> Self {
        Self::new(HostSpec::Inline(p.host().into()), p)
    }

    /// Builds the partition of a graph on `n` vertices. `base` resolves a
    /// host file reference.
    pub fn to_hpartition(&self, n: usize, base: &Path) -> Result<HPartition, FormatError> {
        let host = match &self.host {
            HostSpec::Inline(g) => Graph::new(g.n, &g.edges).map_err(PartitionError::from)?,
            HostSpec::File(f) => read_graph(&base.join(f))?,
        };
        let mut parts = vec![VertexSet::new(); host.vertex_count()];
        for (key, members) in &self.parts {
            let x: usize = key.parse().map_err(|_| FormatError::Invalid(format!("part key '{key}' is not a host vertex")))?;
            if x >= parts.len() {
                return Err(FormatError::Invalid(format!("part {x} is outside a host of {} vertices", parts.len())));
            }
            parts[x] = VertexSet::from(members.clone());
        }
        Ok(HPartition::new(host, n, parts)?)
    }
}

impl LayeringFile {
    pub fn new(lay: &Layering) -> Self {
        LayeringFile { layers: lay.layers().iter().map(|l| l.to_vec()).collect() }
    }

    pub fn to_layering(&self, n: usize) -> Result<Layering, FormatError> {
        Ok(Layering::new(n, self.layers.iter().cloned().map(VertexSet::from).collect())?)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FormatError + '_ {
    move |source| FormatError::Io { path: path.display().to_string(), source }
}

pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let f = File::open(path).map_err(io_err(path))?;
    read_edge_list(BufReader::new(f)).map_err(|source| FormatError::EdgeList { path: path.display().to_string(), source })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let f = File::open(path).map_err(io_err(path))?;
    serde_json::from_reader(BufReader::new(f)).map_err(|source| FormatError::Json { path: path.display().to_string(), source })
}

pub fn read_partition(path: &Path, n: usize) -> Result<HPartition, FormatError> {
    let file: PartitionFile = read_json(path)?;
    file.to_hpartition(n, path.parent().unwrap_or(Path::new(".")))
}

pub fn read_layering(path: &Path, n: usize) -> Result<Layering, FormatError> {
    read_json::<LayeringFile>(path)?.to_layering(n)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed write leaves nothing behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| FormatError::Io { path: path.display().to_string(), source: e.error })?;
    Ok(())
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), FormatError> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).map_err(io_err(path))?;
    write_atomic(path, &buf)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

/// Graphviz rendering, one `u -- v` line per edge.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        s.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_round_trip_through_a_host_file() {
        let dir = tempfile::tempdir().unwrap();
        let host = Graph::new(2, &[(0, 1)]).unwrap();
        write_graph(&dir.path().join("host.el"), &host).unwrap();
        let p = HPartition::from_assignment(host, &[0, 1, 0]).unwrap();
        let file = PartitionFile::new(HostSpec::File("host.el".into()), &p);
        let path = dir.path().join("p.json");
        write_json(&path, &file).unwrap();
        assert_eq!(read_partition(&path, 3).unwrap(), p);
    }

    #[test]
    fn inline_host_and_missing_parts() {
        let text = r#"{ "host": { "n": 3, "edges": [[0, 1], [1, 2]] }, "parts": { "1": [0, 1] } }"#;
        let file: PartitionFile = serde_json::from_str(text).unwrap();
        let p = file.to_hpartition(2, Path::new(".")).unwrap();
        assert!(p.part(0).is_empty() && p.part(2).is_empty());
        assert!(file.to_hpartition(3, Path::new(".")).is_err());
    }

    #[test]
    fn dot_lists_edges() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(to_dot(&g), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
    }
}
