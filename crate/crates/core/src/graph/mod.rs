//! Immutable simple undirected graphs.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored in compressed sparse row
//! form with sorted neighbor lists, so a graph with a few million vertices
//! (for example `G_20`) costs tens of megabytes.

mod io;
mod traverse;
mod vertex_set;

pub use io::{read_edge_list, write_edge_list, EdgeListError};
pub use traverse::{
    bfs_distances, component_labels, components_avoiding, diameter_of_subset, distance,
    ComponentLabels, Distance, UNREACHED,
};
pub use vertex_set::VertexSet;

use std::fmt;

use thiserror::Error;

/// Vertex identifier. Always in `0..graph.vertex_count()`.
pub type Vertex = usize;

/// What is wrong with an edge handed to [`Graph::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeDefect {
    OutOfRange,
    SelfLoop,
    Duplicate,
}

impl fmt::Display for EdgeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeDefect::OutOfRange => "endpoint out of range",
            EdgeDefect::SelfLoop => "self-loop",
            EdgeDefect::Duplicate => "duplicate edge",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed edge ({u}, {v}): {defect}")]
    MalformedEdge { u: Vertex, v: Vertex, defect: EdgeDefect },
    #[error("vertex {vertex} is not in a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("{n} vertices exceeds the 32-bit vertex id space")]
    TooLarge { n: usize },
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count())
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints
    /// outside `0..n`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge { n });
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::MalformedEdge { u, v, defect: EdgeDefect::OutOfRange });
            }
            if u == v {
                return Err(GraphError::MalformedEdge { u, v, defect: EdgeDefect::SelfLoop });
            }
        }
        let g = Self::assemble(n, edges.iter().copied());
        for v in 0..n {
            if let Some(w) = g.adj(v).windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v.min(w[0] as usize), v.max(w[0] as usize));
                return Err(GraphError::MalformedEdge { u: a, v: b, defect: EdgeDefect::Duplicate });
            }
        }
        Ok(g)
    }

    /// Builds a graph from a multigraph description: self-loops are dropped
    /// and parallel edges merged. Endpoints must still be in range.
    pub fn from_edges_merged(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge { n });
        }
        let mut kept = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::MalformedEdge { u, v, defect: EdgeDefect::OutOfRange });
            }
            if u != v {
                kept.push((u.min(v), u.max(v)));
            }
        }
        kept.sort_unstable();
        kept.dedup();
        Ok(Self::assemble(n, kept.into_iter()))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::assemble(n, std::iter::empty())
    }

    fn assemble(n: usize, edges: impl Iterator<Item = (Vertex, Vertex)> + Clone) -> Self {
        let mut degree = vec![0usize; n];
        for (u, v) in edges.clone() {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for (u, v) in edges {
            targets[fill[u]] = v as u32;
            fill[u] += 1;
            targets[fill[v]] = u as u32;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    fn adj(&self, v: Vertex) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.adj(v).iter().map(|&w| w as usize)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.adj(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.adj(u).iter().map(|&w| w as usize).filter(move |&w| w > u).map(move |w| (u, w))
        })
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    /// Checks that every member of `set` is a vertex of this graph.
    pub fn check_subset(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.last() {
            Some(v) if v >= self.vertex_count() => {
                Err(GraphError::VertexOutOfRange { vertex: v, n: self.vertex_count() })
            }
            _ => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1
            || component_labels(self, None).count == 1
    }

    /// True iff the graph is nonempty, connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Open neighborhood `N(S)`: vertices outside `set` adjacent to a member.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|v| self.neighbors(v))
            .filter(|w| !set.contains(*w))
            .collect();
        out.sort_unstable();
        out.dedup();
        VertexSet::from_sorted_unchecked(out)
    }

    /// The subgraph induced by `keep`, with vertices renumbered `0..|keep|`
    /// in increasing order of their original ids.
    pub fn induced(&self, keep: &VertexSet) -> Result<Relabeled, GraphError> {
        self.check_subset(keep)?;
        let old_of_new: Vec<Vertex> = keep.iter().collect();
        let mut new_of_old = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in old_of_new.iter().enumerate() {
            new_of_old[v] = i as u32;
        }
        let edges: Vec<(Vertex, Vertex)> = old_of_new
            .iter()
            .flat_map(|&v| self.neighbors(v).map(move |w| (v, w)))
            .filter(|&(v, w)| v < w && new_of_old[w] != u32::MAX)
            .map(|(v, w)| (new_of_old[v] as usize, new_of_old[w] as usize))
            .collect();
        let graph = Self::assemble(old_of_new.len(), edges.into_iter());
        Ok(Relabeled { graph, old_of_new })
    }

    /// `G - S` with the explicit id table.
    pub fn without(&self, removed: &VertexSet) -> Result<Relabeled, GraphError> {
        self.check_subset(removed)?;
        let keep = VertexSet::from_sorted_unchecked(
            (0..self.vertex_count()).filter(|&v| !removed.contains(v)).collect(),
        );
        self.induced(&keep)
    }
}

/// A derived graph together with the table mapping its ids back to the
/// graph it came from.
#[derive(Debug, Clone)]
pub struct Relabeled {
    pub graph: Graph,
    /// `old_of_new[i]` is the original id of new vertex `i`; strictly increasing.
    pub old_of_new: Vec<Vertex>,
}

impl Relabeled {
    pub fn old(&self, new: Vertex) -> Vertex {
        self.old_of_new[new]
    }

    pub fn new_id(&self, old: Vertex) -> Option<Vertex> {
        self.old_of_new.binary_search(&old).ok()
    }
}
