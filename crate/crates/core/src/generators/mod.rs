//! Complete binary trees, the graphs `G_h`, and grids with subdivided
//! horizontal edges.

mod gh;
mod grid;
mod tree;

pub use gh::GhGraph;
pub use grid::{GridRole, SubdividedGrid};
pub use tree::CompleteBinaryTree;

use thiserror::Error;

/// Default cap on the number of vertices a generator may allocate.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("height {height} needs {vertices} vertices, over the budget of {budget}")]
    HeightTooLarge { height: usize, vertices: u128, budget: usize },
    #[error("grid needs {vertices} vertices, over the budget of {budget}")]
    GridTooLarge { vertices: u128, budget: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex set is not unrelated")]
    NotUnrelated,
}
