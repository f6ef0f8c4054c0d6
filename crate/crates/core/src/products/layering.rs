use std::collections::VecDeque;

use crate::graph::{Graph, Vertex, VertexSet, UNREACHED};

use super::{HPartition, PartitionError};

/// A path-partition: layers `P_0, P_1, ...` such that every edge stays in a
/// layer or joins consecutive layers. Empty layers are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<VertexSet>,
    layer_of: Vec<u32>,
}

impl Layering {
    pub fn new(subject_vertex_count: usize, layers: Vec<VertexSet>) -> Result<Self, PartitionError> {
        let mut layer_of = vec![u32::MAX; subject_vertex_count];
        for (i, layer) in layers.iter().enumerate() {
            for v in layer.iter() {
                if v >= subject_vertex_count || layer_of[v] != u32::MAX {
                    return Err(PartitionError::NotAPartition(format!("vertex {v} is out of range or repeated")));
                }
                layer_of[v] = i as u32;
            }
        }
        if let Some(v) = layer_of.iter().position(|&l| l == u32::MAX) {
            return Err(PartitionError::NotAPartition(format!("vertex {v} is in no layer")));
        }
        Ok(Self { layers, layer_of })
    }

    /// Builds a layering from a layer index per vertex.
    pub fn from_assignment(layer_of: &[usize]) -> Result<Self, PartitionError> {
        let count = layer_of.iter().max().map_or(0, |m| m + 1);
        let mut layers = vec![Vec::new(); count];
        for (v, &l) in layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        Self::new(layer_of.len(), layers.into_iter().map(VertexSet::from).collect())
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &VertexSet {
        &self.layers[i]
    }

    pub fn layer_of(&self, v: Vertex) -> usize {
        self.layer_of[v] as usize
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn subject_vertex_count(&self) -> usize {
        self.layer_of.len()
    }

    /// The same partition as an `H`-partition whose host is a path.
    pub fn to_hpartition(&self) -> HPartition {
        let k = self.layers.len();
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        let host = Graph::new(k, &edges).expect("path edges");
        HPartition::new(host, self.subject_vertex_count(), self.layers.clone()).expect("layers partition the vertices")
    }
}

/// Edges of `g` spanning non-consecutive layers, sorted.
pub fn validate_layering(g: &Graph, lay: &Layering) -> Result<Vec<(Vertex, Vertex)>, PartitionError> {
    if lay.subject_vertex_count() != g.vertex_count() {
        return Err(PartitionError::NotAPartition(format!(
            "layering covers {} vertices, graph has {}",
            lay.subject_vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(g.edges().filter(|&(v, w)| lay.layer_of(v).abs_diff(lay.layer_of(w)) > 1).collect())
}

/// Layer `k` holds the vertices at distance `k` from `root`.
pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering, PartitionError> {
    g.check_subset(&VertexSet::from(vec![root]))?;
    let mut dist = vec![UNREACHED; g.vertex_count()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist.contains(&UNREACHED) {
        return Err(PartitionError::Disconnected { root });
    }
    let assignment: Vec<usize> = dist.into_iter().map(|d| d as usize).collect();
    Layering::from_assignment(&assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GhGraph;

    #[test]
    fn path_layers() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let lay = bfs_layering(&g, 0).unwrap();
        assert_eq!(lay.layers(), &[VertexSet::from(vec![0]), VertexSet::from(vec![1]), VertexSet::from(vec![2])]);
    }

    #[test]
    fn star_layers() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lay = bfs_layering(&g, 0).unwrap();
        assert_eq!(lay.layers(), &[VertexSet::from(vec![0]), VertexSet::from(vec![1, 2, 3, 4])]);
    }

    #[test]
    fn gh_bfs_layers_are_depths() {
        let gh = GhGraph::new(5).unwrap();
        let lay = bfs_layering(&gh.graph, 0).unwrap();
        assert_eq!(lay.len(), 6);
        for d in 0..=5 {
            assert_eq!(lay.layer(d).to_vec(), gh.tree.level(d).collect::<Vec<_>>());
        }
        assert!(validate_layering(&gh.graph, &lay).unwrap().is_empty());
    }

    #[test]
    fn disconnected_root() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(bfs_layering(&g, 0), Err(PartitionError::Disconnected { root: 0 }));
    }

    #[test]
    fn skipped_layer_is_a_violation() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let lay = Layering::from_assignment(&[0, 1, 3]).unwrap();
        assert_eq!(validate_layering(&g, &lay).unwrap(), vec![(1, 2)]);
        assert!(lay.layer(2).is_empty());
    }

    #[test]
    fn layering_is_a_path_partition() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let lay = Layering::from_assignment(&[0, 1, 1]).unwrap();
        let hp = lay.to_hpartition();
        assert!(crate::products::validate_hpartition(&g, &hp).unwrap().is_empty());
        assert!(hp.is_tree_partition_host());
    }
}
