use crate::graph::{Graph, Vertex, VertexSet};

use super::PartitionError;

/// A partition of the vertices of a subject graph `G` into parts `B_x`
/// indexed by the vertices `x` of a host graph `H`.
///
/// Parts are disjoint and cover `0..subject_vertex_count`; empty parts are
/// allowed. Whether `G`'s edges respect `H` is checked separately by
/// [`validate_hpartition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPartition {
    host: Graph,
    parts: Vec<VertexSet>,
    part_of: Vec<u32>,
}

impl HPartition {
    pub fn new(host: Graph, subject_vertex_count: usize, parts: Vec<VertexSet>) -> Result<Self, PartitionError> {
        if parts.len() != host.vertex_count() {
            return Err(PartitionError::NotAPartition(format!(
                "{} parts for a host with {} vertices",
                parts.len(),
                host.vertex_count()
            )));
        }
        let mut part_of = vec![u32::MAX; subject_vertex_count];
        for (x, part) in parts.iter().enumerate() {
            for v in part.iter() {
                if v >= subject_vertex_count {
                    return Err(PartitionError::NotAPartition(format!("vertex {v} is out of range")));
                }
                if part_of[v] != u32::MAX {
                    return Err(PartitionError::NotAPartition(format!("vertex {v} is in two parts")));
                }
                part_of[v] = x as u32;
            }
        }
        if let Some(v) = part_of.iter().position(|&x| x == u32::MAX) {
            return Err(PartitionError::NotAPartition(format!("vertex {v} is in no part")));
        }
        Ok(Self { host, parts, part_of })
    }

    /// Builds the partition from a part index per subject vertex.
    pub fn from_assignment(host: Graph, assignment: &[Vertex]) -> Result<Self, PartitionError> {
        let mut parts = vec![Vec::new(); host.vertex_count()];
        for (v, &x) in assignment.iter().enumerate() {
            if x >= parts.len() {
                return Err(PartitionError::NotAPartition(format!("vertex {v} assigned to missing part {x}")));
            }
            parts[x].push(v);
        }
        let parts = parts.into_iter().map(VertexSet::from).collect();
        Self::new(host, assignment.len(), parts)
    }

    /// Every vertex in its own part, with `host` as the host graph.
    pub fn singletons(host: Graph) -> Self {
        let n = host.vertex_count();
        Self::from_assignment(host, &(0..n).collect::<Vec<_>>()).expect("identity assignment")
    }

    /// All vertices in one part over the one-vertex host.
    pub fn one_bag(subject_vertex_count: usize) -> Self {
        Self::from_assignment(Graph::empty(1), &vec![0; subject_vertex_count]).expect("single part")
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part(&self, x: Vertex) -> &VertexSet {
        &self.parts[x]
    }

    pub fn part_of(&self, v: Vertex) -> Vertex {
        self.part_of[v] as usize
    }

    pub fn subject_vertex_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn width(&self) -> usize {
        self.parts.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn is_tree_partition_host(&self) -> bool {
        self.host.is_tree()
    }
}

/// Size of the largest part.
pub fn partition_width(p: &HPartition) -> usize {
    p.width()
}

/// Edges `vw` of `g` whose parts are distinct and non-adjacent in the host,
/// sorted. Empty iff `p` is a valid `H`-partition of `g`.
pub fn validate_hpartition(g: &Graph, p: &HPartition) -> Result<Vec<(Vertex, Vertex)>, PartitionError> {
    if p.subject_vertex_count() != g.vertex_count() {
        return Err(PartitionError::NotAPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.subject_vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(g.edges()
        .filter(|&(v, w)| {
            let (x, y) = (p.part_of(v), p.part_of(w));
            x != y && !p.host().has_edge(x, y)
        })
        .collect())
}
