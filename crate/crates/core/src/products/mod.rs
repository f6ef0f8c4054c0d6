//! Strong products, `H`-partitions, layerings, and the conversions between a
//! product embedding and a partition pair.

mod embedding;
mod layering;
mod ops;
mod partition;
mod strong;

pub use embedding::{embedding_to_partitions, partitions_to_embedding, validate_embedding, ProductCoord, ProductEmbedding};
pub use layering::{bfs_layering, validate_layering, Layering};
pub use ops::{compose_tree_partition, diameter_spread, shared_neighbor_bag, Spread};
pub use partition::{partition_width, validate_hpartition, HPartition};
pub use strong::{strong_product, strong_product_with_budget, StrongProduct};

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, Vertex};

/// Which hypothesis of [`shared_neighbor_bag`] did not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    /// The vertex is inside `B_x` or has no neighbor in it.
    Neighborhood(Vertex),
    /// The two vertices lie in different components of `G - B_x`.
    Component,
    /// The partition is not a valid tree-partition around `x`.
    TreePartition,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::Neighborhood(v) => write!(f, "vertex {v} is not in N(B_x)"),
            Precondition::Component => f.write_str("vertices lie in different components of G - B_x"),
            Precondition::TreePartition => f.write_str("not a valid tree-partition"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("{kind} is invalid: {count} violating edges, first ({}, {})", first.0, first.1)]
    Invalid { kind: &'static str, count: usize, first: (Vertex, Vertex) },
    #[error("cell (x={x}, y={y}) has {size} vertices, more than c={c}")]
    CellTooLarge { x: Vertex, y: usize, size: usize, c: usize },
    #[error("graph is not connected from root {root}")]
    Disconnected { root: Vertex },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("host mismatch: expected a partition of {expected} vertices, got {found}")]
    HostMismatch { expected: usize, found: usize },
    #[error("host graph is not a tree")]
    HostNotTree,
    #[error("subset is empty")]
    EmptySubset,
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("product has {vertices} vertices, over the budget of {budget}")]
    BudgetExceeded { vertices: u128, budget: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
