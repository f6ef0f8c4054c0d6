use std::ops::Range;

use super::{CompleteBinaryTree, GenError, DEFAULT_VERTEX_BUDGET};
use crate::graph::{Graph, Vertex};

/// `G_h`: the complete binary tree `T_h` plus, for each depth `i >= 1`, the
/// path `D_i` through the depth-`i` vertices in left-to-right order.
///
/// Vertex ids are the heap ids of the tree, so `D_i` is the id range
/// `2^i - 1 .. 2^(i+1) - 1` traversed in increasing order.
#[derive(Debug, Clone)]
pub struct GhGraph {
    pub tree: CompleteBinaryTree,
    pub graph: Graph,
}

impl GhGraph {
    pub fn new(height: usize) -> Result<Self, GenError> {
        Self::with_budget(height, DEFAULT_VERTEX_BUDGET)
    }

    pub fn with_budget(height: usize, budget: usize) -> Result<Self, GenError> {
        if height == 0 {
            return Err(GenError::InvalidParameter("G_h needs h >= 1".into()));
        }
        let tree = CompleteBinaryTree::with_budget(height, budget)?;
        let n = tree.vertex_count();
        let mut edges = Vec::with_capacity(2 * n);
        edges.extend((1..n).map(|v| ((v - 1) / 2, v)));
        for d in 1..=height {
            let level = tree.level(d);
            edges.extend((level.start..level.end - 1).map(|v| (v, v + 1)));
        }
        let graph = Graph::new(n, &edges).expect("G_h edges are well formed");
        Ok(Self { tree, graph })
    }

    pub fn height(&self) -> usize {
        self.tree.height()
    }

    /// The vertices of `D_i` in path order.
    pub fn level_path(&self, i: usize) -> Range<Vertex> {
        self.tree.level(i)
    }

    /// `D_1, ..., D_h`.
    pub fn level_paths(&self) -> impl Iterator<Item = Range<Vertex>> + '_ {
        (1..=self.height()).map(|i| self.level_path(i))
    }

    /// `2^(h+2) - h - 4`.
    pub fn expected_edge_count(height: usize) -> usize {
        (1 << (height + 2)) - height - 4
    }
}
