use super::OracleError;
use crate::graph::{Graph, Vertex};
use crate::products::{partitions_to_embedding, HPartition, Layering, ProductEmbedding};

pub const MIN_PRODUCT_MAX_VERTICES: usize = 8;

// Caps the number of (partition, layering) pairs scored.
const PAIR_BUDGET: usize = 50_000_000;

/// The least `c` with `g ⊆ T ⊠ P ⊠ K_c`, and a witness.
#[derive(Debug, Clone)]
pub struct MinProduct {
    pub c: usize,
    pub tree_partition: HPartition,
    pub layering: Layering,
    pub embedding: ProductEmbedding,
}

/// Exhaustive search for the smallest clique factor `c` such that `g` is a
/// subgraph of `T ⊠ P ⊠ K_c` with `T` a tree on at most `max_tree_vertices`
/// vertices and `P` a path with at most `max_path_length` edges.
///
/// Equivalently, the least over tree-partitions and layerings of the
/// largest cell. Tree-partitions are enumerated as set partitions whose
/// quotient graph is a forest; the forest is then joined into a tree.
pub fn min_product_c(g: &Graph, max_tree_vertices: usize, max_path_length: usize) -> Result<MinProduct, OracleError> {
    let n = g.vertex_count();
    if n > MIN_PRODUCT_MAX_VERTICES {
        return Err(OracleError::BudgetExceeded { what: format!("{n} vertices"), limit: MIN_PRODUCT_MAX_VERTICES });
    }
    if n == 0 || max_tree_vertices == 0 {
        return Err(OracleError::InvalidParameter("need at least one vertex and one tree node".into()));
    }
    let layerings = enumerate_layerings(g, max_path_length + 1)?;
    if layerings.is_empty() {
        return Err(OracleError::InvalidParameter(format!("no layering with at most {} layers", max_path_length + 1)));
    }
    let mut best: Option<(usize, Vec<usize>, usize)> = None;
    let mut scored = 0usize;
    let mut block = vec![0usize; n];
    let mut search = Search { g, max_blocks: max_tree_vertices, layerings: &layerings, best: &mut best, scored: &mut scored };
    search.assign(&mut block, 0, 0)?;
    let (c, blocks, lay_idx) = best.expect("the single-block partition is always a forest");
    let count = blocks.iter().max().map_or(0, |m| m + 1);
    let host = forest_to_tree(g, &blocks, count);
    let tree_partition = HPartition::from_assignment(host, &blocks).expect("blocks are in range");
    let layering = Layering::from_assignment(&layerings[lay_idx]).expect("layers are dense");
    let embedding = partitions_to_embedding(g, &tree_partition, &layering, c).expect("witness is valid by construction");
    Ok(MinProduct { c, tree_partition, layering, embedding })
}

struct Search<'a> {
    g: &'a Graph,
    max_blocks: usize,
    layerings: &'a [Vec<usize>],
    best: &'a mut Option<(usize, Vec<usize>, usize)>,
    scored: &'a mut usize,
}

impl Search<'_> {
    // Restricted-growth enumeration of set partitions with a forest check on
    // each prefix (a cycle among assigned vertices never disappears).
    fn assign(&mut self, block: &mut Vec<usize>, v: usize, used: usize) -> Result<(), OracleError> {
        let n = self.g.vertex_count();
        if self.best.as_ref().is_some_and(|b| b.0 == 1) {
            return Ok(());
        }
        if v == n {
            return self.score(block, used);
        }
        for b in 0..=used.min(self.max_blocks - 1) {
            block[v] = b;
            if quotient_is_forest(self.g, &block[..=v], used.max(b + 1)) {
                self.assign(block, v + 1, used.max(b + 1))?;
            }
        }
        Ok(())
    }

    fn score(&mut self, block: &[usize], used: usize) -> Result<(), OracleError> {
        let n = block.len();
        let layers = self.layerings.iter().map(|l| l.iter().max().map_or(0, |m| m + 1)).max().unwrap_or(1);
        let mut cell = vec![0usize; used * layers];
        for (idx, lay) in self.layerings.iter().enumerate() {
            *self.scored += 1;
            if *self.scored > PAIR_BUDGET {
                return Err(OracleError::BudgetExceeded { what: "partition/layering pairs".into(), limit: PAIR_BUDGET });
            }
            cell.iter_mut().for_each(|c| *c = 0);
            let mut worst = 0;
            for v in 0..n {
                let slot = &mut cell[block[v] * layers + lay[v]];
                *slot += 1;
                worst = worst.max(*slot);
            }
            if self.best.as_ref().is_none_or(|b| worst < b.0) {
                *self.best = Some((worst, block.to_vec(), idx));
                if worst == 1 {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn quotient_is_forest(g: &Graph, block: &[usize], count: usize) -> bool {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, &bu) in block.iter().enumerate() {
        for w in g.neighbors(u) {
            if w < block.len() && u < w && block[w] != bu {
                edges.push((bu.min(block[w]), bu.max(block[w])));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn forest_to_tree(g: &Graph, block: &[usize], count: usize) -> Graph {
    let quotient = Graph::from_edges_merged(count, g.edges().map(|(u, v)| (block[u], block[v]))).expect("in range");
    let labels = crate::graph::component_labels(&quotient, None);
    let mut edges: Vec<(Vertex, Vertex)> = quotient.edges().collect();
    let mut reps: Vec<Vertex> = vec![usize::MAX; labels.count];
    for x in 0..count {
        let l = labels.label[x] as usize;
        if reps[l] == usize::MAX {
            reps[l] = x;
        }
    }
    edges.extend(reps.windows(2).map(|w| (w[0], w[1])));
    Graph::new(count, &edges).expect("joining forest components keeps a simple graph")
}

// All layer assignments with at most `max_layers` layers, edges spanning at
// most one layer, and layer 0 used.
fn enumerate_layerings(g: &Graph, max_layers: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut layer = vec![0usize; n];
    fn rec(g: &Graph, v: usize, max_layers: usize, layer: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<(), OracleError> {
        if out.len() > PAIR_BUDGET {
            return Err(OracleError::BudgetExceeded { what: "layerings".into(), limit: PAIR_BUDGET });
        }
        if v == layer.len() {
            let mut used = vec![false; max_layers];
            for &l in layer.iter() {
                used[l] = true;
            }
            // dense: layers 0..k all used
            if let Some(k) = used.iter().rposition(|&u| u) {
                if used[..=k].iter().all(|&u| u) {
                    out.push(layer.clone());
                }
            }
            return Ok(());
        }
        for l in 0..max_layers {
            if g.neighbors(v).filter(|&w| w < v).all(|w| layer[w].abs_diff(l) <= 1) {
                layer[v] = l;
                rec(g, v + 1, max_layers, layer, out)?;
            }
        }
        Ok(())
    }
    rec(g, 0, max_layers, &mut layer, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::validate_embedding;

    #[test]
    fn single_vertex() {
        let r = min_product_c(&Graph::empty(1), 1, 0).unwrap();
        assert_eq!(r.c, 1);
    }

    #[test]
    fn triangle() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = min_product_c(&k3, 6, 6).unwrap();
        assert_eq!(r.c, 1);
        validate_embedding(&k3, &r.embedding).unwrap();
        // with one tree node and one layer everything shares a cell
        assert_eq!(min_product_c(&k3, 1, 0).unwrap().c, 3);
    }

    #[test]
    fn layering_count_of_an_edge() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        // (0,0), (0,1), (1,0)
        assert_eq!(enumerate_layerings(&e, 3).unwrap().len(), 3);
    }

    #[test]
    fn too_large() {
        assert!(matches!(min_product_c(&Graph::empty(9), 2, 2), Err(OracleError::BudgetExceeded { .. })));
    }
}
