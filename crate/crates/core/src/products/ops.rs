use std::collections::VecDeque;

use crate::graph::{Graph, Vertex, VertexSet};

use super::{HPartition, Layering, PartitionError, Precondition};

/// Composes `hp` (a partition of `g` over `H`) with `tp` (a tree-partition
/// of `H` over `T`): the part at tree node `u` is the union of `B_x` over
/// the host vertices `x` in `tp`'s part at `u`. Empty unions stay as empty
/// parts.
pub fn compose_tree_partition(hp: &HPartition, tp: &HPartition) -> Result<HPartition, PartitionError> {
    if tp.subject_vertex_count() != hp.host().vertex_count() {
        return Err(PartitionError::HostMismatch {
            expected: hp.host().vertex_count(),
            found: tp.subject_vertex_count(),
        });
    }
    if !tp.host().is_tree() {
        return Err(PartitionError::HostNotTree);
    }
    let parts = tp
        .parts()
        .iter()
        .map(|hosts| hosts.iter().flat_map(|x| hp.part(x).iter()).collect())
        .collect();
    HPartition::new(tp.host().clone(), hp.subject_vertex_count(), parts)
}

/// A layer holding the most members of a vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spread {
    pub layer: usize,
    pub count: usize,
}

/// The layer `L` maximizing `|R ∩ L|` (lowest index on ties). Because `R`
/// meets at most `diam(R) + 1` consecutive layers, `count` is at least
/// `ceil(|R| / (diam(R) + 1))`.
pub fn diameter_spread(r: &VertexSet, lay: &Layering) -> Result<Spread, PartitionError> {
    if r.is_empty() {
        return Err(PartitionError::EmptySubset);
    }
    if r.last().is_some_and(|v| v >= lay.subject_vertex_count()) {
        return Err(PartitionError::NotAPartition("subset is not covered by the layering".into()));
    }
    let mut counts = vec![0usize; lay.len()];
    for v in r.iter() {
        counts[lay.layer_of(v)] += 1;
    }
    let (layer, &count) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty subset");
    Ok(Spread { layer, count })
}

fn in_neighborhood(g: &Graph, bag: &VertexSet, v: Vertex) -> bool {
    !bag.contains(v) && g.neighbors(v).any(|w| bag.contains(w))
}

/// For `v, w ∈ N(B_x)` in one component of `G - B_x`, the tree node `y`
/// adjacent to `x` whose part contains both.
pub fn shared_neighbor_bag(
    g: &Graph,
    tp: &HPartition,
    x: Vertex,
    v: Vertex,
    w: Vertex,
) -> Result<Vertex, PartitionError> {
    let fail = |p| Err(PartitionError::PreconditionFailed(p));
    if tp.subject_vertex_count() != g.vertex_count() || x >= tp.host().vertex_count() || !tp.host().is_tree() {
        return fail(Precondition::TreePartition);
    }
    let bag = tp.part(x);
    for u in [v, w] {
        if u >= g.vertex_count() || !in_neighborhood(g, bag, u) {
            return fail(Precondition::Neighborhood(u));
        }
    }
    if !connected_avoiding(g, bag, v, w) {
        return fail(Precondition::Component);
    }
    let y = tp.part_of(v);
    if tp.part_of(w) != y || !tp.host().has_edge(x, y) {
        return fail(Precondition::TreePartition);
    }
    Ok(y)
}

fn connected_avoiding(g: &Graph, bag: &VertexSet, v: Vertex, w: Vertex) -> bool {
    if v == w {
        return true;
    }
    let mut seen = bag.mask(g.vertex_count());
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for z in g.neighbors(u) {
            if z == w {
                return true;
            }
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::diameter_of_subset;
    use crate::generators::GhGraph;
    use crate::products::validate_hpartition;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn spread_inside_one_layer() {
        let lay = Layering::from_assignment(&[0, 1, 1, 2]).unwrap();
        assert_eq!(diameter_spread(&VertexSet::from(vec![1, 2]), &lay).unwrap(), Spread { layer: 1, count: 2 });
        assert!(diameter_spread(&VertexSet::new(), &lay).is_err());
    }

    #[test]
    fn spread_of_path_endpoints() {
        let g = path(4);
        let lay = crate::products::bfs_layering(&g, 0).unwrap();
        let s = diameter_spread(&VertexSet::from(vec![0, 3]), &lay).unwrap();
        assert_eq!(s, Spread { layer: 0, count: 1 });
    }

    #[test]
    fn spread_of_deepest_level() {
        let gh = GhGraph::new(3).unwrap();
        let lay = crate::products::bfs_layering(&gh.graph, 0).unwrap();
        let r: VertexSet = gh.level_path(3).collect();
        let diam = diameter_of_subset(&gh.graph, &r).unwrap().finite().unwrap();
        let s = diameter_spread(&r, &lay).unwrap();
        assert_eq!(s, Spread { layer: 3, count: 8 });
        assert!(s.count * (diam + 1) >= r.len());
    }

    #[test]
    fn compose_with_identity_and_collapse() {
        let g = path(4);
        let host = path(2);
        let hp = HPartition::from_assignment(host.clone(), &[0, 0, 1, 1]).unwrap();
        let same = compose_tree_partition(&hp, &HPartition::singletons(host)).unwrap();
        assert_eq!(same, hp);
        let one = compose_tree_partition(&hp, &HPartition::one_bag(2)).unwrap();
        assert_eq!(one.parts(), &[VertexSet::from(vec![0, 1, 2, 3])]);
        assert!(validate_hpartition(&g, &one).unwrap().is_empty());
        assert!(matches!(
            compose_tree_partition(&hp, &HPartition::one_bag(3)),
            Err(PartitionError::HostMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn shared_bag_requires_one_component() {
        let g = path(4);
        let tp = HPartition::from_assignment(path(2), &[1, 0, 0, 1]).unwrap();
        assert!(validate_hpartition(&g, &tp).unwrap().is_empty());
        assert_eq!(
            shared_neighbor_bag(&g, &tp, 0, 0, 3),
            Err(PartitionError::PreconditionFailed(Precondition::Component))
        );
    }

    #[test]
    fn shared_bag_on_a_four_cycle() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let tp = HPartition::from_assignment(path(3), &[0, 1, 2, 1]).unwrap();
        assert!(validate_hpartition(&c4, &tp).unwrap().is_empty());
        assert_eq!(shared_neighbor_bag(&c4, &tp, 0, 1, 3), Ok(1));
        assert_eq!(shared_neighbor_bag(&c4, &tp, 0, 1, 1), Ok(1));
        assert_eq!(
            shared_neighbor_bag(&c4, &tp, 0, 2, 3),
            Err(PartitionError::PreconditionFailed(Precondition::Neighborhood(2)))
        );
    }
}
