use crate::generators::DEFAULT_VERTEX_BUDGET;
use crate::graph::{Graph, Vertex};

use super::PartitionError;

/// `G1 ⊠ G2` with the coordinate table: product vertex `(v, x)` has id
/// `v * |V(G2)| + x`.
#[derive(Debug, Clone)]
pub struct StrongProduct {
    pub graph: Graph,
    right_order: usize,
}

impl StrongProduct {
    pub fn id(&self, v: Vertex, x: Vertex) -> Vertex {
        v * self.right_order + x
    }

    pub fn coords(&self, id: Vertex) -> (Vertex, Vertex) {
        (id / self.right_order, id % self.right_order)
    }
}

/// Strong product of two nonempty graphs: `(v,x) ~ (w,y)` iff the pairs are
/// distinct and each coordinate is equal or adjacent in its factor.
pub fn strong_product(g1: &Graph, g2: &Graph) -> Result<StrongProduct, PartitionError> {
    strong_product_with_budget(g1, g2, DEFAULT_VERTEX_BUDGET)
}

pub fn strong_product_with_budget(g1: &Graph, g2: &Graph, budget: usize) -> Result<StrongProduct, PartitionError> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if n1 == 0 || n2 == 0 {
        return Err(PartitionError::InvalidEmbedding("strong product factors must be nonempty".into()));
    }
    let vertices = n1 as u128 * n2 as u128;
    if vertices > budget as u128 {
        return Err(PartitionError::BudgetExceeded { vertices, budget });
    }
    let closed = |g: &Graph, v: Vertex| -> Vec<Vertex> {
        let mut c: Vec<Vertex> = g.neighbors(v).collect();
        c.push(v);
        c
    };
    let mut edges = Vec::new();
    for v in 0..n1 {
        let nv = closed(g1, v);
        for x in 0..n2 {
            let nx = closed(g2, x);
            let a = v * n2 + x;
            for &w in &nv {
                for &y in &nx {
                    let b = w * n2 + y;
                    if a < b {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    let graph = Graph::new(n1 * n2, &edges)?;
    Ok(StrongProduct { graph, right_order: n2 })
}
