use serde::{Deserialize, Serialize};

use crate::arith::ceil_log2;
use crate::generators::CompleteBinaryTree;
use crate::graph::{Vertex, VertexSet};

use super::{find_two_escapes_in, PercolationError};

/// Parts `R_1..R_q` of a complete binary tree, each hanging below its own
/// anchor. The family is `(k, ell, m)`-compact when every part is unrelated
/// with at least `k` members, every member lies within `ell` levels of its
/// anchor, and the anchors are unrelated with height at least `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactFamily {
    pub tree_height: usize,
    pub parts: Vec<VertexSet>,
    pub anchors: Vec<Vertex>,
    pub k: usize,
    pub ell: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum CompactViolation {
    ShapeMismatch { parts: usize, anchors: usize },
    OutOfTree { vertex: Vertex },
    PartRelated { part: usize },
    PartTooSmall { part: usize, size: usize, k: usize },
    NotAncestor { part: usize, vertex: Vertex, anchor: Vertex },
    TooFar { part: usize, vertex: Vertex, distance: usize, ell: usize },
    AnchorsRelated { first: Vertex, second: Vertex },
    AnchorTooLow { anchor: Vertex, height: usize, m: usize },
    UnionRelated,
    OrderNotBlockwise,
}

impl CompactFamily {
    /// Each vertex as its own part and anchor: a `(1, 0, m)`-compact family
    /// where `m` is the least height among the vertices.
    pub fn singletons(t: &CompleteBinaryTree, vertices: &VertexSet) -> Self {
        let m = vertices.iter().map(|v| t.height_of(v)).min().unwrap_or(0);
        CompactFamily {
            tree_height: t.height(),
            parts: vertices.iter().map(|v| VertexSet::from(vec![v])).collect(),
            anchors: vertices.to_vec(),
            k: 1,
            ell: 0,
            m,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self) -> VertexSet {
        self.parts.iter().flat_map(|p| p.iter()).collect()
    }
}

/// All violated clauses of the compact definition, in a fixed order. An
/// empty list means the family is valid.
pub fn validate_compact(f: &CompactFamily) -> Vec<CompactViolation> {
    let mut out = Vec::new();
    let t = match CompleteBinaryTree::new(f.tree_height) {
        Ok(t) => t,
        Err(_) => {
            out.push(CompactViolation::OutOfTree { vertex: usize::MAX });
            return out;
        }
    };
    if f.parts.len() != f.anchors.len() {
        out.push(CompactViolation::ShapeMismatch { parts: f.parts.len(), anchors: f.anchors.len() });
        return out;
    }
    let stray = f.anchors.iter().copied().chain(f.parts.iter().flat_map(|p| p.iter())).find(|&v| !t.contains(v));
    if let Some(vertex) = stray {
        out.push(CompactViolation::OutOfTree { vertex });
        return out;
    }

    for (i, (part, &a)) in f.parts.iter().zip(&f.anchors).enumerate() {
        if !t.is_unrelated(part) {
            out.push(CompactViolation::PartRelated { part: i });
        }
        if part.len() < f.k {
            out.push(CompactViolation::PartTooSmall { part: i, size: part.len(), k: f.k });
        }
        for v in part.iter() {
            if !t.is_ancestor(a, v) {
                out.push(CompactViolation::NotAncestor { part: i, vertex: v, anchor: a });
            } else if t.depth(v) - t.depth(a) > f.ell {
                out.push(CompactViolation::TooFar { part: i, vertex: v, distance: t.depth(v) - t.depth(a), ell: f.ell });
            }
        }
    }

    for (i, &a) in f.anchors.iter().enumerate() {
        for &b in &f.anchors[i + 1..] {
            if t.is_ancestor(a, b) || t.is_ancestor(b, a) {
                out.push(CompactViolation::AnchorsRelated { first: a, second: b });
            }
        }
        if t.height_of(a) < f.m {
            out.push(CompactViolation::AnchorTooLow { anchor: a, height: t.height_of(a), m: f.m });
        }
    }

    let total: usize = f.parts.iter().map(VertexSet::len).sum();
    let union = f.union();
    if union.len() != total || !t.is_unrelated(&union) {
        out.push(CompactViolation::UnionRelated);
    } else if !blockwise(&t, f, &union) {
        out.push(CompactViolation::OrderNotBlockwise);
    }
    out
}

// In left-to-right order of the union, members of each part must appear in
// the same order as their anchors.
fn blockwise(t: &CompleteBinaryTree, f: &CompactFamily, union: &VertexSet) -> bool {
    let anchor_set: VertexSet = f.anchors.iter().copied().collect();
    let (Ok(order), Ok(anchor_order)) = (t.left_to_right_order(union), t.left_to_right_order(&anchor_set)) else {
        return false;
    };
    let rank_of_anchor = |a: Vertex| anchor_order.iter().position(|&b| b == a).expect("anchor listed");
    let part_rank: Vec<usize> = f.anchors.iter().map(|&a| rank_of_anchor(a)).collect();
    let owner = |v: Vertex| f.parts.iter().position(|p| p.contains(v)).expect("member of some part");
    order.windows(2).all(|w| part_rank[owner(w[0])] <= part_rank[owner(w[1])])
}

/// A grown family plus, for each member of each part, its escape path to a
/// leaf avoiding the blocking set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrownFamily {
    pub family: CompactFamily,
    /// Parallel to `family.parts`; paths follow the part's sorted order.
    pub paths: Vec<Vec<Vec<Vertex>>>,
}

/// Replaces every member `r` of every part by the two escape vertices of
/// `s` found below `r`. Anchors and `m` are kept; `k` doubles and `ell`
/// grows by `ceil(log2 |s|) + 2`.
///
/// Requires a valid family, `∪parts ⊆ s` and `1 <= |s| < 2^(m - ell - 2)`.
pub fn grow_compact(t: &CompleteBinaryTree, f: &CompactFamily, s: &VertexSet) -> Result<GrownFamily, PercolationError> {
    if f.tree_height != t.height() {
        return Err(PercolationError::PreconditionFailed(format!(
            "family is over T_{} but the tree is T_{}",
            f.tree_height,
            t.height()
        )));
    }
    let violations = validate_compact(f);
    if !violations.is_empty() {
        return Err(PercolationError::PreconditionFailed(format!("family is not compact: {violations:?}")));
    }
    if !f.union().is_subset(s) {
        return Err(PercolationError::PreconditionFailed("parts are not contained in S".into()));
    }
    let room = f.m.checked_sub(f.ell + 2);
    let fits = match room {
        Some(e) if e >= 128 => true,
        Some(e) => (s.len() as u128) < 1u128 << e,
        None => false,
    };
    if s.is_empty() || !fits {
        return Err(PercolationError::PreconditionFailed(format!(
            "need 1 <= |S| < 2^(m - ell - 2) with m = {}, ell = {}, |S| = {}",
            f.m,
            f.ell,
            s.len()
        )));
    }

    let mut parts = Vec::with_capacity(f.parts.len());
    let mut paths = Vec::with_capacity(f.parts.len());
    for part in &f.parts {
        let mut members = Vec::with_capacity(2 * part.len());
        for r in part.iter() {
            let [a, b] = find_two_escapes_in(t, r, s)?.into_array();
            members.push(a);
            members.push(b);
        }
        members.sort_by_key(|e| e.vertex);
        parts.push(members.iter().map(|e| e.vertex).collect::<VertexSet>());
        paths.push(members.into_iter().map(|e| e.path).collect());
    }
    let family = CompactFamily {
        tree_height: f.tree_height,
        parts,
        anchors: f.anchors.clone(),
        k: 2 * f.k,
        ell: f.ell + ceil_log2(s.len() as u128) as usize + 2,
        m: f.m,
    };
    Ok(GrownFamily { family, paths })
}
