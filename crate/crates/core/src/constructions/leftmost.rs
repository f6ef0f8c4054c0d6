use serde::{Deserialize, Serialize};

use crate::generators::GhGraph;
use crate::graph::{component_labels, Graph, Vertex, VertexSet};
use crate::products::{HPartition, Layering};

/// The chain partition of `G_h` and its depth layering.
#[derive(Debug, Clone)]
pub struct LeftmostPartition {
    pub partition: HPartition,
    pub layering: Layering,
}

impl LeftmostPartition {
    pub fn host(&self) -> &Graph {
        self.partition.host()
    }
}

/// Splits `T_h` into maximal left-child chains: one from the root and one
/// from every right child, each running down to a leaf. Host node `j` is the
/// chain ending at the `j`-th leaf from the left, and the layering is by
/// depth. Every chain meets each depth at most once, so every cell has at
/// most one vertex.
pub fn build_leftmost_path_partition(gh: &GhGraph) -> LeftmostPartition {
    let t = &gh.tree;
    let h = gh.height();
    let n = t.vertex_count();
    let leaves = t.leaves();
    let mut chain_of = vec![0usize; n];
    // Walk each level: a left child inherits its parent's chain, a right
    // child starts the chain ending at the leftmost leaf below it.
    for v in 1..n {
        chain_of[v] = if t.is_left_child(v) {
            chain_of[t.parent(v).expect("not the root")]
        } else {
            t.leaf_interval(v).start
        };
    }
    let count = leaves.len();
    let host = Graph::from_edges_merged(
        count,
        gh.graph.edges().map(|(u, v)| (chain_of[u], chain_of[v])),
    )
    .expect("chain ids are in range");
    let partition = HPartition::from_assignment(host, &chain_of).expect("every vertex has a chain");
    let depth: Vec<usize> = (0..n).map(|v| t.depth(v)).collect();
    let layering = Layering::from_assignment(&depth).expect("depths cover 0..=h");
    debug_assert_eq!(layering.len(), h + 1);
    LeftmostPartition { partition, layering }
}

/// A part `B` and a component `X` of `G - B` whose boundary `N(B) ∩ X` is
/// large while no other part holds more than `max_per_part` of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnsharedBoundary {
    pub part: Vertex,
    /// Smallest vertex of `X`.
    pub component: Vertex,
    pub component_size: usize,
    pub boundary: usize,
    pub max_per_part: usize,
}

/// Over all parts `B` and components `X` of `G - B`, the pair with the
/// largest boundary `|N(B) ∩ X|` among those where every part meets the
/// boundary in at most one vertex. In a tree-partition such a boundary
/// would have to sit inside a single neighboring part.
pub fn find_unshared_boundary(g: &Graph, hp: &HPartition) -> Option<UnsharedBoundary> {
    let n = g.vertex_count();
    let mut best: Option<UnsharedBoundary> = None;
    for (x, bag) in hp.parts().iter().enumerate() {
        if bag.is_empty() {
            continue;
        }
        let mask = bag.mask(n);
        let labels = component_labels(g, Some(&mask));
        let boundary: VertexSet = g.neighborhood(bag);
        let mut per_component: Vec<Vec<Vertex>> = vec![Vec::new(); labels.count];
        for v in boundary.iter() {
            per_component[labels.label[v] as usize].push(v);
        }
        for (comp, members) in per_component.iter().enumerate() {
            if members.is_empty() {
                continue;
            }
            let mut owners: Vec<Vertex> = members.iter().map(|&v| hp.part_of(v)).collect();
            owners.sort_unstable();
            let mut max_per_part = 1;
            let mut run = 1;
            for w in owners.windows(2) {
                run = if w[0] == w[1] { run + 1 } else { 1 };
                max_per_part = max_per_part.max(run);
            }
            if max_per_part > 1 || best.as_ref().is_some_and(|b| b.boundary >= members.len()) {
                continue;
            }
            let component = labels.label.iter().position(|&l| l as usize == comp).expect("nonempty");
            best = Some(UnsharedBoundary {
                part: x,
                component,
                component_size: labels.sizes[comp],
                boundary: members.len(),
                max_per_part,
            });
        }
    }
    best
}
