use super::OracleError;
use crate::graph::Graph;

pub const TREEWIDTH_MAX_VERTICES: usize = 8;

/// Exact treewidth as the best elimination order: the width of an order is
/// the largest number of later neighbors a vertex has in the fill-in graph.
/// Orders are searched by dynamic programming over the set of eliminated
/// vertices.
pub fn exact_treewidth_tiny(g: &Graph) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if n > TREEWIDTH_MAX_VERTICES {
        return Err(OracleError::BudgetExceeded { what: format!("{n} vertices"), limit: TREEWIDTH_MAX_VERTICES });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    let full = (1u32 << n) - 1;
    // Vertices outside `gone ∪ {v}` reachable from v through `gone`: the
    // neighbors v has when eliminated after `gone`.
    let later = |gone: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(u) = stack.pop() {
            let mut nb = adj[u] & !seen;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                seen |= 1 << w;
                if gone >> w & 1 == 1 {
                    stack.push(w);
                } else {
                    out |= 1 << w;
                }
            }
        }
        out
    };
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for gone in 0..full {
        if best[gone as usize] == usize::MAX {
            continue;
        }
        for v in 0..n {
            if gone >> v & 1 == 1 {
                continue;
            }
            let width = best[gone as usize].max(later(gone, v).count_ones() as usize);
            let next = (gone | 1 << v) as usize;
            best[next] = best[next].min(width);
        }
    }
    Ok(best[full as usize])
}
