use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{GenError, DEFAULT_VERTEX_BUDGET};
use crate::graph::{Graph, Vertex, VertexSet};

/// The complete binary tree `T_h` in heap order: the root is `0` and the
/// children of `v` are `2v + 1` (left) and `2v + 2` (right).
///
/// Nothing is stored beyond the height; every structural query is index
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteBinaryTree {
    height: usize,
}

impl CompleteBinaryTree {
    pub fn new(height: usize) -> Result<Self, GenError> {
        Self::with_budget(height, DEFAULT_VERTEX_BUDGET)
    }

    pub fn with_budget(height: usize, budget: usize) -> Result<Self, GenError> {
        let vertices = if height >= 127 { u128::MAX } else { (1u128 << (height + 1)) - 1 };
        if vertices > budget as u128 {
            return Err(GenError::HeightTooLarge { height, vertices, budget });
        }
        Ok(Self { height })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vertex_count(&self) -> usize {
        (1 << (self.height + 1)) - 1
    }

    pub fn root(&self) -> Vertex {
        0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    pub fn depth(&self, v: Vertex) -> usize {
        (usize::BITS - 1 - (v + 1).leading_zeros()) as usize
    }

    /// Height of `v` within the tree, `h - depth(v)`.
    pub fn height_of(&self, v: Vertex) -> usize {
        self.height - self.depth(v)
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.depth(v) == self.height
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        (v > 0).then(|| (v - 1) / 2)
    }

    pub fn left(&self, v: Vertex) -> Option<Vertex> {
        (!self.is_leaf(v)).then_some(2 * v + 1)
    }

    pub fn right(&self, v: Vertex) -> Option<Vertex> {
        (!self.is_leaf(v)).then_some(2 * v + 2)
    }

    pub fn is_left_child(&self, v: Vertex) -> bool {
        v > 0 && v % 2 == 1
    }

    /// Vertices of depth `d`, left to right.
    pub fn level(&self, d: usize) -> Range<Vertex> {
        ((1 << d) - 1)..((1 << (d + 1)) - 1)
    }

    pub fn leaves(&self) -> Range<Vertex> {
        self.level(self.height)
    }

    /// The ancestor of `v` at depth `d <= depth(v)`.
    pub fn ancestor_at_depth(&self, v: Vertex, d: usize) -> Vertex {
        ((v + 1) >> (self.depth(v) - d)) - 1
    }

    /// `a` lies on the path from `v` to the root (`v` counts as its own ancestor).
    pub fn is_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        let (da, dv) = (self.depth(a), self.depth(v));
        da <= dv && self.ancestor_at_depth(v, da) == a
    }

    pub fn lca(&self, u: Vertex, v: Vertex) -> Vertex {
        let d = self.depth(u).min(self.depth(v));
        let (mut a, mut b) = (self.ancestor_at_depth(u, d), self.ancestor_at_depth(v, d));
        while a != b {
            a = (a - 1) / 2;
            b = (b - 1) / 2;
        }
        a
    }

    /// Length of the tree path between `u` and `v`.
    pub fn tree_distance(&self, u: Vertex, v: Vertex) -> usize {
        let l = self.depth(self.lca(u, v));
        self.depth(u) + self.depth(v) - 2 * l
    }

    /// Descendants of `v` that lie `k` levels below it, left to right.
    pub fn descendants_at(&self, v: Vertex, k: usize) -> Range<Vertex> {
        let first = ((v + 1) << k) - 1;
        first..first + (1 << k)
    }

    /// Leaf ranks (`0..2^h`) below `v`.
    pub fn leaf_interval(&self, v: Vertex) -> Range<usize> {
        let leaves = self.descendants_at(v, self.height_of(v));
        let base = (1 << self.height) - 1;
        (leaves.start - base)..(leaves.end - base)
    }

    /// Number of vertices in the subtree rooted at `v`.
    pub fn subtree_size(&self, v: Vertex) -> usize {
        (1 << (self.height_of(v) + 1)) - 1
    }

    /// The leftmost root-to-leaf path of the subtree rooted at `v`.
    pub fn left_spine(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(l) = self.left(cur) {
            path.push(l);
            cur = l;
        }
        path
    }

    /// True iff no member of `b` is a proper ancestor of another. Members
    /// outside the tree make the answer `false`.
    pub fn is_unrelated(&self, b: &VertexSet) -> bool {
        if b.last().is_some_and(|v| !self.contains(v)) {
            return false;
        }
        let mut spans: Vec<Range<usize>> = b.iter().map(|v| self.leaf_interval(v)).collect();
        spans.sort_by_key(|r| (r.start, std::cmp::Reverse(r.end)));
        spans.windows(2).all(|w| w[0].end <= w[1].start)
    }

    /// Members of an unrelated set in left-to-right order.
    pub fn left_to_right_order(&self, b: &VertexSet) -> Result<Vec<Vertex>, GenError> {
        if !self.is_unrelated(b) {
            return Err(GenError::NotUnrelated);
        }
        let mut out = b.to_vec();
        out.sort_by_key(|&v| self.leaf_interval(v).start);
        Ok(out)
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..self.vertex_count()).map(|v| ((v - 1) / 2, v)).collect();
        Graph::new(self.vertex_count(), &edges).expect("tree edges are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(h: usize) -> CompleteBinaryTree {
        CompleteBinaryTree::new(h).unwrap()
    }

    #[test]
    fn small_trees() {
        assert_eq!(t(0).vertex_count(), 1);
        assert_eq!(t(0).to_graph().edge_count(), 0);
        let t1 = t(1).to_graph();
        assert_eq!(t1.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        let t3 = t(3);
        assert_eq!(t3.vertex_count(), 15);
        assert_eq!(t3.leaves(), 7..15);
        assert_eq!(t3.depth(5), 2);
        assert_eq!(t3.height_of(5), 1);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            CompleteBinaryTree::with_budget(10, 1000),
            Err(GenError::HeightTooLarge { vertices: 2047, .. })
        ));
        assert!(CompleteBinaryTree::with_budget(9, 1023).is_ok());
    }

    #[test]
    fn unrelated_sets() {
        let t2 = t(2);
        assert!(t2.is_unrelated(&t2.leaves().collect()));
        assert!(!t2.is_unrelated(&VertexSet::from(vec![0, 5])));
        assert!(t2.is_unrelated(&VertexSet::from(vec![1, 6])));
        assert!(!t2.is_unrelated(&VertexSet::from(vec![1, 4])));
    }

    #[test]
    fn left_to_right() {
        let t2 = t(2);
        assert_eq!(t2.left_to_right_order(&t2.leaves().collect()).unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(t2.left_to_right_order(&VertexSet::from(vec![5, 1])).unwrap(), vec![1, 5]);
        assert_eq!(t2.left_to_right_order(&VertexSet::from(vec![0, 4])), Err(GenError::NotUnrelated));
    }

    #[test]
    fn ancestry_and_distance() {
        let t3 = t(3);
        assert!(t3.is_ancestor(1, 9));
        assert!(t3.is_ancestor(9, 9));
        assert!(!t3.is_ancestor(2, 9));
        assert_eq!(t3.lca(9, 10), 4);
        assert_eq!(t3.lca(7, 14), 0);
        assert_eq!(t3.tree_distance(7, 14), 6);
        assert_eq!(t3.descendants_at(1, 2), 7..11);
        assert_eq!(t3.leaf_interval(2), 4..8);
        assert_eq!(t3.left_spine(2), vec![2, 5, 11]);
    }

    /// Unrelated iff the leaf intervals of the members are pairwise disjoint;
    /// checked against the ancestor relation directly on every subset of T_3.
    #[test]
    fn unrelated_matches_pairwise_ancestry() {
        let t3 = t(3);
        for mask in 0u32..(1 << 15) {
            let b: VertexSet = (0..15).filter(|i| mask >> i & 1 == 1).collect();
            let pairwise = b.iter().all(|u| b.iter().all(|v| u == v || !t3.is_ancestor(u, v)));
            assert_eq!(t3.is_unrelated(&b), pairwise, "{b:?}");
        }
    }
}
