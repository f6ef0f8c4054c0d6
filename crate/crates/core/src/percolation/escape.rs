use crate::generators::CompleteBinaryTree;
use crate::graph::{Vertex, VertexSet};

use super::PercolationError;

/// A vertex together with a path from it down to a leaf that avoids the
/// blocking set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escape {
    pub vertex: Vertex,
    /// Starts at `vertex`, ends at a leaf, descends one level per step.
    pub path: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoEscapes {
    /// In the subtree of the left child.
    pub left: Escape,
    /// In the subtree of the right child.
    pub right: Escape,
}

impl TwoEscapes {
    pub fn into_array(self) -> [Escape; 2] {
        [self.left, self.right]
    }
}

/// Leftmost path from `v` to a leaf of `t` that avoids `s`, if any.
pub fn escape_path(t: &CompleteBinaryTree, v: Vertex, s: &VertexSet) -> Option<Vec<Vertex>> {
    if s.contains(v) {
        return None;
    }
    let mut path = vec![v];
    // Depth-first, left child first. A branch is abandoned only below a
    // member of `s`, so the work is bounded by about |s| * height.
    let mut stack: Vec<(Vertex, u8)> = vec![(v, 0)];
    while let Some(&mut (u, ref mut tried)) = stack.last_mut() {
        if t.is_leaf(u) {
            return Some(path);
        }
        if *tried == 2 {
            stack.pop();
            path.pop();
            continue;
        }
        let child = 2 * u + 1 + *tried as usize;
        *tried += 1;
        if !s.contains(child) {
            stack.push((child, 0));
            path.push(child);
        }
    }
    None
}

fn members_below(t: &CompleteBinaryTree, r: Vertex, s: &VertexSet) -> Vec<Vertex> {
    s.iter().filter(|&v| t.is_ancestor(r, v)).collect()
}

fn check_vertex(t: &CompleteBinaryTree, v: Vertex) -> Result<(), PercolationError> {
    if t.contains(v) {
        Ok(())
    } else {
        Err(PercolationError::OutOfTree(v))
    }
}

/// Escape vertex for the whole tree: `v != root`, `2^depth(v) <= 2|s|`,
/// the parent of `v` is in `s` or is the root, and a leaf is reachable from
/// `v` in `T - s`. Requires `1 <= |s| < 2^h`; the root may belong to `s`.
pub fn find_escape(t: &CompleteBinaryTree, s: &VertexSet) -> Result<Escape, PercolationError> {
    find_escape_in(t, t.root(), s)
}

/// [`find_escape`] applied to the subtree rooted at `r`, with `s` restricted
/// to that subtree. Depths and the "parent is the root" clause are relative
/// to `r`.
pub fn find_escape_in(t: &CompleteBinaryTree, r: Vertex, s: &VertexSet) -> Result<Escape, PercolationError> {
    check_vertex(t, r)?;
    if let Some(v) = s.last() {
        check_vertex(t, v)?;
    }
    let below = members_below(t, r, s);
    let hr = t.height_of(r);
    if hr == 0 || below.is_empty() || (hr < 127 && below.len() as u128 >= 1u128 << hr) {
        return Err(PercolationError::PreconditionFailed(format!(
            "need 1 <= |S| < 2^{hr} in the subtree of {r}, |S| = {}",
            below.len()
        )));
    }
    escape_rec(t, r, &below, s)
}

// `below` holds the members of `s` inside the subtree of `r`, sorted, and
// satisfies 1 <= |below| < 2^height(r).
fn escape_rec(t: &CompleteBinaryTree, r: Vertex, below: &[Vertex], s: &VertexSet) -> Result<Escape, PercolationError> {
    let dr = t.depth(r);
    let hr = t.height_of(r);
    let mut per_level = vec![0usize; hr + 1];
    for &v in below {
        per_level[t.depth(v) - dr] += 1;
    }
    // deepest relative level that is full in S ∪ {r}
    let full = (1..=hr).rev().find(|&k| per_level[k] == 1 << k).unwrap_or(0);
    if full >= hr {
        return Err(PercolationError::NoEscape);
    }
    let next = t.descendants_at(r, full + 1);
    let mut counts = vec![0usize; next.len()];
    for &v in below {
        if t.depth(v) > dr + full {
            counts[t.ancestor_at_depth(v, dr + full + 1) - next.start] += 1;
        }
    }
    let (offset, &fewest) = counts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .expect("level below r is nonempty");
    let pick = next.start + offset;
    if fewest == 0 {
        return Ok(Escape { vertex: pick, path: t.left_spine(pick) });
    }
    let inner: Vec<Vertex> = below.iter().copied().filter(|&v| t.is_ancestor(pick, v)).collect();
    let sub = escape_rec(t, pick, &inner, s)?;
    let parent = t.parent(sub.vertex).expect("escape vertex is below pick");
    if s.contains(parent) {
        Ok(sub)
    } else {
        debug_assert_eq!(parent, pick);
        let mut path = Vec::with_capacity(sub.path.len() + 1);
        path.push(pick);
        path.extend(sub.path);
        Ok(Escape { vertex: pick, path })
    }
}

/// Two unrelated escape vertices, one below each child of the root.
/// Requires `1 <= |s| < 2^(h-1)`.
pub fn find_two_escapes(t: &CompleteBinaryTree, s: &VertexSet) -> Result<TwoEscapes, PercolationError> {
    find_two_escapes_in(t, t.root(), s)
}

/// [`find_two_escapes`] on the subtree rooted at `r`.
pub fn find_two_escapes_in(t: &CompleteBinaryTree, r: Vertex, s: &VertexSet) -> Result<TwoEscapes, PercolationError> {
    check_vertex(t, r)?;
    if let Some(v) = s.last() {
        check_vertex(t, v)?;
    }
    let below = members_below(t, r, s);
    let hr = t.height_of(r);
    if hr == 0 || below.is_empty() || (hr < 128 && below.len() as u128 >= 1u128 << (hr - 1)) {
        return Err(PercolationError::PreconditionFailed(format!(
            "need 1 <= |S| < 2^{} in the subtree of {r}, |S| = {}",
            hr.saturating_sub(1),
            below.len()
        )));
    }
    let one_side = |child: Vertex| -> Result<Escape, PercolationError> {
        let inner: Vec<Vertex> = below.iter().copied().filter(|&v| t.is_ancestor(child, v)).collect();
        if inner.is_empty() {
            return Ok(Escape { vertex: child, path: t.left_spine(child) });
        }
        let sub = escape_rec(t, child, &inner, s)?;
        if s.contains(t.parent(sub.vertex).expect("below child")) {
            Ok(sub)
        } else {
            let mut path = vec![child];
            path.extend(sub.path);
            Ok(Escape { vertex: child, path })
        }
    };
    Ok(TwoEscapes { left: one_side(2 * r + 1)?, right: one_side(2 * r + 2)? })
}

/// `v` is compatible with `s` if its parent is in `s` and `T - s` has a path
/// from `v` to a leaf; the path is returned as the witness.
pub fn is_compatible(t: &CompleteBinaryTree, v: Vertex, s: &VertexSet) -> Result<Option<Vec<Vertex>>, PercolationError> {
    check_vertex(t, v)?;
    let parent = t.parent(v).ok_or(PercolationError::RootHasNoParent)?;
    if !s.contains(parent) {
        return Ok(None);
    }
    Ok(escape_path(t, v, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(h: usize) -> CompleteBinaryTree {
        CompleteBinaryTree::new(h).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from(v.to_vec())
    }

    /// Checks the three escape clauses from first principles.
    fn sound(t: &CompleteBinaryTree, r: Vertex, s: &VertexSet, e: &Escape, slack: u32) -> bool {
        let size = s.iter().filter(|&v| t.is_ancestor(r, v)).count() as u128;
        let rel_depth = (t.depth(e.vertex) - t.depth(r)) as u32;
        let parent = t.parent(e.vertex);
        e.vertex != r
            && (1u128 << rel_depth) <= (1 << slack) * size
            && parent.is_some_and(|p| p == r || s.contains(p))
            && e.path.first() == Some(&e.vertex)
            && t.is_leaf(*e.path.last().unwrap())
            && e.path.windows(2).all(|w| t.parent(w[1]) == Some(w[0]))
            && e.path.iter().all(|&v| !s.contains(v))
    }

    #[test]
    fn h1_single_child_blocked() {
        let e = find_escape(&t(1), &set(&[1])).unwrap();
        assert_eq!(e.vertex, 2);
        assert_eq!(e.path, vec![2]);
        let e = find_escape(&t(1), &set(&[2])).unwrap();
        assert_eq!(e.vertex, 1);
    }

    #[test]
    fn h2_left_child_blocked() {
        let e = find_escape(&t(2), &set(&[1])).unwrap();
        assert_eq!(e.vertex, 2);
        assert!(t(2).is_leaf(*e.path.last().unwrap()));
    }

    #[test]
    fn every_subset_of_t3() {
        let tree = t(3);
        for mask in 1u32..(1 << 15) {
            let s: VertexSet = (0..15).filter(|i| mask >> i & 1 == 1).collect();
            if s.len() >= 8 {
                assert!(find_escape(&tree, &s).is_err());
                continue;
            }
            let e = find_escape(&tree, &s).unwrap();
            assert!(sound(&tree, 0, &s, &e, 1), "{s:?} -> {e:?}");
        }
    }

    #[test]
    fn root_in_s_is_tolerated() {
        let e = find_escape(&t(3), &set(&[0])).unwrap();
        assert_eq!(e.vertex, 1);
    }

    #[test]
    fn two_escapes_small() {
        let r = find_two_escapes(&t(2), &set(&[1])).unwrap();
        assert_eq!(r.left.vertex, 3);
        assert_eq!(r.right.vertex, 2);
        assert!(matches!(find_two_escapes(&t(1), &set(&[1])), Err(PercolationError::PreconditionFailed(_))));
    }

    #[test]
    fn two_escapes_every_small_subset_of_t3() {
        let tree = t(3);
        for mask in 1u32..(1 << 15) {
            if mask.count_ones() > 3 {
                continue;
            }
            let s: VertexSet = (0..15).filter(|i| mask >> i & 1 == 1).collect();
            let r = find_two_escapes(&tree, &s).unwrap();
            assert!(sound(&tree, 0, &s, &r.left, 2) && sound(&tree, 0, &s, &r.right, 2));
            assert!(tree.is_ancestor(1, r.left.vertex) && tree.is_ancestor(2, r.right.vertex));
        }
    }

    #[test]
    fn subtree_version_ignores_outside_members() {
        let tree = t(4);
        let s = set(&[2, 3, 5]);
        let e = find_escape_in(&tree, 1, &s).unwrap();
        assert!(sound(&tree, 1, &s, &e, 1));
        assert!(tree.is_ancestor(1, e.vertex));
    }

    #[test]
    fn compatibility() {
        let tree = t(3);
        assert_eq!(is_compatible(&tree, 9, &set(&[4])).unwrap(), Some(vec![9]));
        assert_eq!(is_compatible(&tree, 9, &set(&[3])).unwrap(), None);
        assert_eq!(is_compatible(&tree, 1, &set(&[0, 7, 8, 9, 10])).unwrap(), None);
        assert_eq!(is_compatible(&tree, 0, &set(&[1])), Err(PercolationError::RootHasNoParent));
    }

    #[test]
    fn escape_path_prefers_left() {
        let tree = t(3);
        assert_eq!(escape_path(&tree, 1, &set(&[3])), Some(vec![1, 4, 9]));
        assert_eq!(escape_path(&tree, 1, &set(&[3, 9, 10])), None);
    }
}
