use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};

pub const DEFAULT_OUTERPLANAR_BUDGET: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionStep {
    /// A vertex of degree at most one is removed.
    Delete { vertex: Vertex },
    /// A degree-two vertex is replaced by an edge between its neighbors.
    Bypass { vertex: Vertex, a: Vertex, b: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureWitness {
    /// The full reduction to the empty graph.
    Reduction { steps: Vec<ReductionStep> },
    /// Vertices left when no vertex has degree at most two. Such a kernel
    /// contains a `K4` minor.
    Kernel { vertices: VertexSet },
    /// Three internally disjoint paths of length at least two between `a`
    /// and `b`: a subdivided `K_{2,3}`.
    K23 { a: Vertex, b: Vertex, paths: Vec<Vec<Vertex>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub treewidth_le_2: bool,
    /// `None` when not decided.
    pub outerplanar: Option<bool>,
    pub witness: StructureWitness,
}

/// Decides treewidth at most two by series-parallel reduction, always
/// acting on the lowest-numbered vertex of degree at most two.
pub fn treewidth_at_most_2(g: &Graph) -> StructureVerdict {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut ready: BTreeSet<Vertex> = (0..n).filter(|&v| adj[v].len() <= 2).collect();
    let mut steps = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        let nbrs: Vec<Vertex> = std::mem::take(&mut adj[v]).into_iter().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
            steps.push(ReductionStep::Bypass { vertex: v, a, b });
        } else {
            steps.push(ReductionStep::Delete { vertex: v });
        }
        for &w in &nbrs {
            if adj[w].len() <= 2 {
                ready.insert(w);
            }
        }
    }
    let left: VertexSet = (0..n).filter(|&v| alive[v]).collect();
    if left.is_empty() {
        StructureVerdict { treewidth_le_2: true, outerplanar: None, witness: StructureWitness::Reduction { steps } }
    } else {
        StructureVerdict { treewidth_le_2: false, outerplanar: None, witness: StructureWitness::Kernel { vertices: left } }
    }
}

/// [`outerplanarity_check_with_budget`] with the default budget.
pub fn outerplanarity_check_small(g: &Graph) -> StructureVerdict {
    outerplanarity_check_with_budget(g, DEFAULT_OUTERPLANAR_BUDGET)
}

/// Decides outerplanarity by looking for a `K4` or `K_{2,3}` minor. Both
/// have maximum degree three, so each minor exists iff a subdivision does.
/// The `K4` case is the failed series-parallel reduction; for `K_{2,3}` every
/// pair of vertices is tested for three internally disjoint connecting
/// paths of length at least two. Graphs above `budget` vertices are left
/// undecided.
pub fn outerplanarity_check_with_budget(g: &Graph, budget: usize) -> StructureVerdict {
    let mut verdict = treewidth_at_most_2(g);
    if !verdict.treewidth_le_2 {
        verdict.outerplanar = Some(false);
        return verdict;
    }
    if g.vertex_count() > budget {
        return verdict;
    }
    let n = g.vertex_count();
    for a in 0..n {
        if g.degree(a) < 3 {
            continue;
        }
        for b in a + 1..n {
            if g.degree(b) < 3 {
                continue;
            }
            if let Some(paths) = three_long_paths(g, a, b) {
                return StructureVerdict {
                    treewidth_le_2: true,
                    outerplanar: Some(false),
                    witness: StructureWitness::K23 { a, b, paths },
                };
            }
        }
    }
    verdict.outerplanar = Some(true);
    verdict
}

// Up to three internally disjoint a-b paths that avoid the edge ab, by
// augmenting paths in the vertex-split network. `Some` only if three exist.
fn three_long_paths(g: &Graph, a: Vertex, b: Vertex) -> Option<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    // Node 2v is v_in, 2v+1 is v_out. Internal vertices have an in->out
    // arc of capacity one; each edge uw gives u_out->w_in and w_out->u_in.
    let mut flow_through = vec![false; n];
    // (u, w) means the arc u_out -> w_in carries flow.
    let mut flow: HashSet<(Vertex, Vertex)> = HashSet::new();
    for _ in 0..3 {
        // BFS over residual graph from a_out to b_in.
        let src = 2 * a + 1;
        let dst = 2 * b;
        let mut prev = vec![usize::MAX; 2 * n];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(node) = queue.pop_front() {
            if node == dst {
                break;
            }
            let v = node / 2;
            let push = |next: usize, prev: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
                if prev[next] == usize::MAX {
                    prev[next] = node;
                    queue.push_back(next);
                }
            };
            if node % 2 == 1 {
                // v_out: forward edges to w_in, and backward in->out arc.
                for w in g.neighbors(v) {
                    if (v == a && w == b) || w == a || flow.contains(&(v, w)) {
                        continue;
                    }
                    push(2 * w, &mut prev, &mut queue);
                }
                if v != a && v != b && flow_through[v] {
                    push(2 * v, &mut prev, &mut queue);
                }
            } else {
                // v_in: forward in->out arc, and backward edges into v.
                if v != a && v != b && !flow_through[v] {
                    push(2 * v + 1, &mut prev, &mut queue);
                }
                for w in g.neighbors(v) {
                    if flow.contains(&(w, v)) {
                        push(2 * w + 1, &mut prev, &mut queue);
                    }
                }
            }
        }
        if prev[dst] == usize::MAX {
            return None;
        }
        let mut node = dst;
        while node != src {
            let p = prev[node];
            let (u, v) = (p / 2, node / 2);
            match (p % 2 == 1, node % 2 == 1, u == v) {
                (true, false, false) => {
                    if !flow.remove(&(v, u)) {
                        flow.insert((u, v));
                    }
                }
                (false, true, false) => {
                    flow.remove(&(v, u));
                }
                (false, true, true) => flow_through[u] = true,
                (true, false, true) => flow_through[u] = false,
                _ => unreachable!("residual move from {p} to {node}"),
            }
            node = p;
        }
    }
    // Decompose the flow into paths.
    let mut paths = Vec::with_capacity(3);
    let starts: Vec<Vertex> = g.neighbors(a).filter(|&w| flow.contains(&(a, w))).collect();
    for s in starts {
        let mut path = vec![a, s];
        let mut v = s;
        while v != b {
            v = g.neighbors(v).find(|&w| flow.contains(&(v, w))).expect("flow is conserved");
            path.push(v);
        }
        paths.push(path);
    }
    Some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn k23() -> Graph {
        Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn trees_and_k4() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(treewidth_at_most_2(&star).treewidth_le_2);
        let v = treewidth_at_most_2(&complete(4));
        assert!(!v.treewidth_le_2);
        assert_eq!(v.witness, StructureWitness::Kernel { vertices: (0..4).collect() });
    }

    #[test]
    fn cycle_is_outerplanar() {
        let v = outerplanarity_check_small(&cycle(5));
        assert_eq!(v.outerplanar, Some(true));
    }

    #[test]
    fn k23_is_not_outerplanar() {
        let v = outerplanarity_check_small(&k23());
        assert_eq!(v.outerplanar, Some(false));
        assert!(v.treewidth_le_2);
        let StructureWitness::K23 { a, b, paths } = v.witness else { panic!() };
        assert_eq!((a, b), (0, 1));
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|p| p.len() >= 3 && p[0] == a && *p.last().unwrap() == b));
    }

    #[test]
    fn k4_minus_edge_is_outerplanar() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(outerplanarity_check_small(&g).outerplanar, Some(true));
    }

    #[test]
    fn over_budget_is_unknown() {
        let v = outerplanarity_check_with_budget(&cycle(6), 5);
        assert_eq!(v.outerplanar, None);
        assert!(v.treewidth_le_2);
    }
}
