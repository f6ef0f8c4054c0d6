use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::WitnessError;
use crate::arith::ceil_log2;
use crate::generators::GhGraph;
use crate::graph::{component_labels, Graph, Vertex, VertexSet};
use crate::products::{HPartition, PartitionError};

/// A host node `x` such that no component of `G - B_x` has more than
/// `|V(G)| / 2` vertices.
///
/// Walks the host tree towards the oversized component until none is left.
pub fn find_balanced_bag(g: &Graph, tp: &HPartition) -> Result<Vertex, WitnessError> {
    let host = tp.host();
    if !host.is_tree() {
        return Err(PartitionError::HostNotTree.into());
    }
    if tp.subject_vertex_count() != g.vertex_count() {
        return Err(PartitionError::HostMismatch { expected: g.vertex_count(), found: tp.subject_vertex_count() }.into());
    }
    let n = g.vertex_count();
    let mut x = 0;
    for _ in 0..=host.vertex_count() {
        let mask = tp.part(x).mask(n);
        let labels = component_labels(g, Some(&mask));
        let Some((big, size)) = labels.largest() else { return Ok(x) };
        if 2 * size <= n {
            return Ok(x);
        }
        let inside = labels.label.iter().position(|&l| l as usize == big).expect("component has a member");
        x = step_towards(host, x, tp.part_of(inside));
    }
    unreachable!("centroid walk on a tree terminates")
}

// The neighbor of `from` on the host path to `to`.
fn step_towards(host: &Graph, from: Vertex, to: Vertex) -> Vertex {
    let mut parent = vec![usize::MAX; host.vertex_count()];
    parent[to] = to;
    let mut queue = VecDeque::from([to]);
    while let Some(u) = queue.pop_front() {
        if u == from {
            break;
        }
        for w in host.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    parent[from]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthHit {
    pub depth: usize,
    pub hit: bool,
}

/// Which levels `D_i`, `i0 <= i <= h`, a balanced separator meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorDepthReport {
    pub s_size: usize,
    pub i0: usize,
    pub hits: Vec<DepthHit>,
    pub pass: bool,
}

/// `ceil(max(2 log2 s + 2, log2(1 + (h+2) s) - 1))` for `s >= 1`, exactly.
pub fn separator_i0(h: usize, s: usize) -> usize {
    assert!(s >= 1);
    let s = s as u128;
    let first = ceil_log2(s * s) as usize + 2;
    let second = (ceil_log2(1 + (h as u128 + 2) * s) as usize).saturating_sub(1);
    first.max(second)
}

/// Checks that `s` is a balanced separator of `G_h` and reports, for each
/// depth from `i0` to `h`, whether `s` meets that level.
pub fn check_separator_depths(gh: &GhGraph, s: &VertexSet) -> Result<SeparatorDepthReport, WitnessError> {
    let g = &gh.graph;
    g.check_subset(s)?;
    if s.is_empty() {
        return Err(WitnessError::InvalidParameter("separator is empty".into()));
    }
    let mask = s.mask(g.vertex_count());
    let labels = component_labels(g, Some(&mask));
    if labels.largest().is_some_and(|(_, size)| 2 * size > g.vertex_count()) {
        return Err(WitnessError::NotBalancedSeparator);
    }
    let h = gh.height();
    let i0 = separator_i0(h, s.len());
    let hits: Vec<DepthHit> = (i0..=h)
        .map(|depth| {
            let level = gh.level_path(depth);
            DepthHit { depth, hit: level.into_iter().any(|v| mask[v]) }
        })
        .collect();
    let pass = hits.iter().all(|d| d.hit);
    Ok(SeparatorDepthReport { s_size: s.len(), i0, hits, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components_avoiding;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn one_bag_is_balanced() {
        let g = path(4);
        assert_eq!(find_balanced_bag(&g, &HPartition::one_bag(4)).unwrap(), 0);
    }

    #[test]
    fn path_of_singletons_finds_middle() {
        let g = path(5);
        let tp = HPartition::singletons(path(5));
        assert_eq!(find_balanced_bag(&g, &tp).unwrap(), 2);
    }

    #[test]
    fn gh_depth_layering_is_balanced_somewhere() {
        let gh = GhGraph::new(6).unwrap();
        let lay = crate::products::bfs_layering(&gh.graph, 0).unwrap().to_hpartition();
        let x = find_balanced_bag(&gh.graph, &lay).unwrap();
        let comps = components_avoiding(&gh.graph, lay.part(x)).unwrap();
        assert!(comps.iter().all(|c| 2 * c.len() <= gh.graph.vertex_count()));
    }

    #[test]
    fn i0_values() {
        assert_eq!(separator_i0(2, 3), 6);
        assert_eq!(separator_i0(20, 1), 4);
    }

    #[test]
    fn small_separator_is_vacuous() {
        let gh = GhGraph::new(2).unwrap();
        let r = check_separator_depths(&gh, &VertexSet::from(vec![1, 2, 4])).unwrap();
        assert_eq!(r.i0, 6);
        assert!(r.hits.is_empty() && r.pass);
    }

    #[test]
    fn everything_is_balanced() {
        let gh = GhGraph::new(3).unwrap();
        let r = check_separator_depths(&gh, &(0..15).collect()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn unbalanced_is_rejected() {
        let gh = GhGraph::new(3).unwrap();
        let e = check_separator_depths(&gh, &VertexSet::from(vec![14]));
        assert_eq!(e, Err(WitnessError::NotBalancedSeparator));
    }
}
