use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};

use super::{validate_hpartition, validate_layering, HPartition, Layering, PartitionError};

/// Coordinates of a subject vertex in `H ⊠ P ⊠ K_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductCoord {
    pub h: Vertex,
    /// 0-based position on the path factor.
    pub layer: usize,
    pub slot: usize,
}

/// An injective map from a subject graph into `H ⊠ P ⊠ K_c` that carries
/// edges to edges. The path factor is given by its number of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEmbedding {
    pub factor_h: Graph,
    pub path_vertices: usize,
    pub clique_size: usize,
    pub map: Vec<ProductCoord>,
}

impl ProductEmbedding {
    fn adjacent(&self, a: ProductCoord, b: ProductCoord) -> bool {
        a != b
            && (a.h == b.h || self.factor_h.has_edge(a.h, b.h))
            && a.layer.abs_diff(b.layer) <= 1
    }
}

/// Checks injectivity, coordinate ranges and that every edge of `g` lands on
/// an edge of the product.
pub fn validate_embedding(g: &Graph, e: &ProductEmbedding) -> Result<(), PartitionError> {
    let bad = |m: String| Err(PartitionError::InvalidEmbedding(m));
    if e.map.len() != g.vertex_count() {
        return bad(format!("map has {} entries for {} vertices", e.map.len(), g.vertex_count()));
    }
    let mut seen = HashSet::with_capacity(e.map.len());
    for (v, &c) in e.map.iter().enumerate() {
        if c.h >= e.factor_h.vertex_count() || c.layer >= e.path_vertices || c.slot >= e.clique_size {
            return bad(format!("vertex {v} maps outside the product"));
        }
        if !seen.insert(c) {
            return bad(format!("vertex {v} shares its image with another vertex"));
        }
    }
    for (v, w) in g.edges() {
        if !e.adjacent(e.map[v], e.map[w]) {
            return bad(format!("edge ({v}, {w}) is not carried to a product edge"));
        }
    }
    Ok(())
}

/// From a valid `H`-partition and layering whose cells `B_x ∩ P_y` have at
/// most `c` vertices, builds the embedding into `H ⊠ P ⊠ K_c`. Clique slots
/// number the members of each cell in increasing id order.
pub fn partitions_to_embedding(
    g: &Graph,
    hp: &HPartition,
    lay: &Layering,
    c: usize,
) -> Result<ProductEmbedding, PartitionError> {
    let violations = validate_hpartition(g, hp)?;
    if let Some(&first) = violations.first() {
        return Err(PartitionError::Invalid { kind: "H-partition", count: violations.len(), first });
    }
    let violations = validate_layering(g, lay)?;
    if let Some(&first) = violations.first() {
        return Err(PartitionError::Invalid { kind: "layering", count: violations.len(), first });
    }
    let mut cells: BTreeMap<(Vertex, usize), usize> = BTreeMap::new();
    let mut map = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let key = (hp.part_of(v), lay.layer_of(v));
        let slot = cells.entry(key).or_insert(0);
        map.push(ProductCoord { h: key.0, layer: key.1, slot: *slot });
        *slot += 1;
    }
    if let Some((&(x, y), &size)) = cells.iter().find(|(_, &s)| s > c) {
        return Err(PartitionError::CellTooLarge { x, y, size, c });
    }
    Ok(ProductEmbedding {
        factor_h: hp.host().clone(),
        path_vertices: lay.len().max(1),
        clique_size: c.max(1),
        map,
    })
}

/// Reads the partition pair off an embedding: `B_x` is the preimage of
/// `{x} × P × K_c` and `P_y` the preimage of `H × {y} × K_c`.
pub fn embedding_to_partitions(
    g: &Graph,
    e: &ProductEmbedding,
) -> Result<(HPartition, Layering, usize), PartitionError> {
    validate_embedding(g, e)?;
    let mut parts = vec![Vec::new(); e.factor_h.vertex_count()];
    let mut layers = vec![Vec::new(); e.path_vertices];
    for (v, c) in e.map.iter().enumerate() {
        parts[c.h].push(v);
        layers[c.layer].push(v);
    }
    let n = g.vertex_count();
    let hp = HPartition::new(e.factor_h.clone(), n, parts.into_iter().map(VertexSet::from).collect())?;
    let lay = Layering::new(n, layers.into_iter().map(VertexSet::from).collect())?;
    Ok((hp, lay, e.clique_size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GhGraph;
    use crate::products::strong_product;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_into_k3() {
        let g = triangle();
        let lay = Layering::from_assignment(&[0, 0, 0]).unwrap();
        let e = partitions_to_embedding(&g, &HPartition::one_bag(3), &lay, 3).unwrap();
        assert_eq!(e.map.iter().map(|c| c.slot).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(validate_embedding(&g, &e).is_ok());
        assert!(matches!(
            partitions_to_embedding(&g, &HPartition::one_bag(3), &lay, 2),
            Err(PartitionError::CellTooLarge { x: 0, y: 0, size: 3, c: 2 })
        ));
    }

    #[test]
    fn g1_into_k2_p2_k2() {
        let gh = GhGraph::new(1).unwrap();
        let host = Graph::new(2, &[(0, 1)]).unwrap();
        let hp = HPartition::from_assignment(host, &[0, 1, 1]).unwrap();
        let lay = Layering::from_assignment(&[0, 1, 1]).unwrap();
        let e = partitions_to_embedding(&gh.graph, &hp, &lay, 2).unwrap();
        assert_eq!((e.path_vertices, e.clique_size), (2, 2));
        assert_eq!(e.map[2], ProductCoord { h: 1, layer: 1, slot: 1 });
        assert!(partitions_to_embedding(&gh.graph, &hp, &lay, 1).is_err());
    }

    #[test]
    fn singleton_parts_and_layers() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let hp = HPartition::singletons(g.clone());
        let lay = Layering::from_assignment(&[0, 1, 2, 3]).unwrap();
        let e = partitions_to_embedding(&g, &hp, &lay, 1).unwrap();
        for (v, w) in g.edges() {
            assert!(e.factor_h.has_edge(e.map[v].h, e.map[w].h));
        }
    }

    #[test]
    fn k4_into_k2_k2_k1() {
        let k4 = strong_product(&Graph::new(2, &[(0, 1)]).unwrap(), &Graph::new(2, &[(0, 1)]).unwrap())
            .unwrap()
            .graph;
        let map = (0..4).map(|i| ProductCoord { h: i / 2, layer: i % 2, slot: 0 }).collect();
        let e = ProductEmbedding { factor_h: Graph::new(2, &[(0, 1)]).unwrap(), path_vertices: 2, clique_size: 1, map };
        let (hp, lay, c) = embedding_to_partitions(&k4, &e).unwrap();
        assert_eq!(c, 1);
        assert!(hp.parts().iter().all(|p| p.len() == 2));
        assert!(lay.layers().iter().all(|p| p.len() == 2));
    }

    #[test]
    fn identity_embedding() {
        let g = triangle();
        let map = (0..3).map(|v| ProductCoord { h: v, layer: 0, slot: 0 }).collect();
        let e = ProductEmbedding { factor_h: g.clone(), path_vertices: 1, clique_size: 1, map };
        let (hp, lay, _) = embedding_to_partitions(&g, &e).unwrap();
        assert_eq!(hp.width(), 1);
        assert_eq!(lay.len(), 1);
    }

    #[test]
    fn rejects_bad_embeddings() {
        let g = triangle();
        let mk = |map: Vec<ProductCoord>| ProductEmbedding { factor_h: Graph::empty(2), path_vertices: 3, clique_size: 2, map };
        let c = |h, layer, slot| ProductCoord { h, layer, slot };
        // not injective
        assert!(validate_embedding(&g, &mk(vec![c(0, 0, 0), c(0, 0, 0), c(0, 1, 0)])).is_err());
        // edge 0-2 spans layers 0 and 2
        assert!(validate_embedding(&g, &mk(vec![c(0, 0, 0), c(0, 1, 0), c(0, 2, 0)])).is_err());
        // host vertices 0 and 1 are not adjacent
        assert!(validate_embedding(&g, &mk(vec![c(0, 0, 0), c(1, 0, 0), c(0, 0, 1)])).is_err());
        assert!(validate_embedding(&g, &mk(vec![c(0, 0, 0), c(0, 0, 1), c(0, 1, 0)])).is_ok());
    }
}
