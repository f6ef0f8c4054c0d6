use super::OracleError;
use crate::generators::GhGraph;
use crate::graph::{Graph, VertexSet};

const MAX_HEIGHT: usize = 5;
const SUBSET_BUDGET: u64 = 200_000_000;

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect()
}

fn largest_component(adj: &[u64], n: usize, removed: u64) -> usize {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut left = all & !removed;
    let mut best = 0;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & left & !comp;
            comp |= new;
            frontier |= new;
        }
        best = best.max(comp.count_ones() as usize);
        left &= !comp;
    }
    best
}

/// No component of `G - s` has more than half the vertices.
pub fn is_balanced_separator(g: &Graph, s: &VertexSet) -> bool {
    let n = g.vertex_count();
    let labels = crate::graph::component_labels(g, Some(&s.mask(n)));
    labels.largest().is_none_or(|(_, size)| 2 * size <= n)
}

/// Every inclusion-minimal balanced separator of `G_h` with at most
/// `max_size` vertices, in order of size and then of bitmask.
///
/// Balance is preserved under adding vertices, so a set is minimal exactly
/// when removing any single member breaks balance.
pub fn minimal_balanced_separators(gh: &GhGraph, max_size: usize) -> Result<Vec<VertexSet>, OracleError> {
    let h = gh.height();
    if h > MAX_HEIGHT {
        return Err(OracleError::BudgetExceeded { what: format!("height {h}"), limit: MAX_HEIGHT });
    }
    let g = &gh.graph;
    let n = g.vertex_count();
    let adj = masks(g);
    let balanced = |m: u64| 2 * largest_component(&adj, n, m) <= n;
    let max_size = max_size.min(n);
    let mut total: u64 = 0;
    let mut out = Vec::new();
    for k in 1..=max_size {
        let count = binomial(n as u64, k as u64);
        total = total.saturating_add(count);
        if total > SUBSET_BUDGET {
            return Err(OracleError::BudgetExceeded { what: format!("subsets of size <= {k}"), limit: SUBSET_BUDGET as usize });
        }
        let mut m: u64 = (1u64 << k) - 1;
        let end = if n == 64 { 0 } else { 1u64 << n };
        while m < end || (n == 64 && m != 0) {
            if balanced(m) {
                let mut rest = m;
                let mut minimal = true;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if balanced(m & !bit) {
                        minimal = false;
                        break;
                    }
                }
                if minimal {
                    out.push((0..n).filter(|&v| m >> v & 1 == 1).collect());
                }
            }
            // next subset with the same popcount (Gosper's hack)
            let c = m & m.wrapping_neg();
            let r = m.wrapping_add(c);
            if r == 0 {
                break;
            }
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    Ok(out)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
