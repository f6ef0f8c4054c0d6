use proptest::prelude::*;

use psw::generators::{CompleteBinaryTree, GhGraph};
use psw::graph::{diameter_of_subset, read_edge_list, write_edge_list, Graph, VertexSet};
use psw::oracle::min_product_c;
use psw::percolation::{find_escape, find_two_escapes};
use psw::products::{
    bfs_layering, diameter_spread, strong_product, validate_hpartition, validate_layering, HPartition,
};

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

// Reaches a leaf of T_h from v without entering s: checked on the tree
// graph by plain search, not through the tree helpers.
fn escapes(t: &CompleteBinaryTree, v: usize, s: &VertexSet) -> bool {
    let g = t.to_graph();
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if s.contains(u) || seen[u] {
            continue;
        }
        seen[u] = true;
        if g.degree(u) == 1 && u != 0 {
            return true;
        }
        stack.extend(g.neighbors(u).filter(|&w| w > u));
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gh_counts(h in 1usize..=12) {
        let gh = GhGraph::new(h).unwrap();
        let g = &gh.graph;
        prop_assert_eq!(g.vertex_count(), (1 << (h + 1)) - 1);
        prop_assert_eq!(g.edge_count(), (1 << (h + 2)) - h - 4);
        prop_assert!(g.max_degree() <= 5);
        for d in 1..=h {
            let path = gh.level_path(d);
            for v in path.start..path.end - 1 {
                prop_assert!(g.has_edge(v, v + 1));
            }
        }
    }

    #[test]
    fn strong_product_counts(a in small_graph(5), b in small_graph(5)) {
        let p = strong_product(&a, &b).unwrap();
        let (n1, n2, m1, m2) = (a.vertex_count(), b.vertex_count(), a.edge_count(), b.edge_count());
        prop_assert_eq!(p.graph.edge_count(), m1 * n2 + m2 * n1 + 2 * m1 * m2);
        for v in 0..n1 {
            for x in 0..n2 {
                prop_assert_eq!(p.graph.degree(p.id(v, x)), (a.degree(v) + 1) * (b.degree(x) + 1) - 1);
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in small_graph(9)) {
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        prop_assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn quotient_partitions_are_valid(g in small_graph(8), seed in proptest::collection::vec(0usize..4, 8)) {
        let n = g.vertex_count();
        let assign: Vec<usize> = seed[..n].to_vec();
        let host = Graph::from_edges_merged(4, g.edges().map(|(u, v)| (assign[u], assign[v]))).unwrap();
        let p = HPartition::from_assignment(host, &assign).unwrap();
        prop_assert!(validate_hpartition(&g, &p).unwrap().is_empty());
    }

    #[test]
    fn escape_depth_bound(h in 2usize..=6, picks in proptest::collection::vec(any::<u16>(), 1..40)) {
        let t = CompleteBinaryTree::new(h).unwrap();
        let n = t.vertex_count();
        let mut s = VertexSet::new();
        for p in picks {
            if s.len() + 1 < 1 << h {
                s.insert(p as usize % n);
            }
        }
        let e = find_escape(&t, &s).unwrap();
        prop_assert!(e.vertex != 0);
        prop_assert!((1usize << t.depth(e.vertex)) <= 2 * s.len());
        let parent = (e.vertex - 1) / 2;
        prop_assert!(parent == 0 || s.contains(parent));
        prop_assert!(escapes(&t, e.vertex, &s));
        if s.len() < 1 << (h - 1) {
            let two = find_two_escapes(&t, &s).unwrap();
            for x in two.into_array() {
                prop_assert!((1usize << t.depth(x.vertex)) <= 4 * s.len());
                prop_assert!(escapes(&t, x.vertex, &s));
            }
        }
    }

    #[test]
    fn spread_meets_the_diameter_bound(h in 2usize..=7, picks in proptest::collection::vec(any::<u16>(), 1..30)) {
        let gh = GhGraph::new(h).unwrap();
        let n = gh.graph.vertex_count();
        let r: VertexSet = picks.iter().map(|&p| p as usize % n).collect();
        let lay = bfs_layering(&gh.graph, n - 1).unwrap();
        prop_assert!(validate_layering(&gh.graph, &lay).unwrap().is_empty());
        let diam = diameter_of_subset(&gh.graph, &r).unwrap().finite().unwrap();
        let s = diameter_spread(&r, &lay).unwrap();
        prop_assert!(s.count * (diam + 1) >= r.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn min_c_is_monotone_under_subgraphs(g in small_graph(5), drop in proptest::collection::vec(any::<bool>(), 10)) {
        let edges: Vec<_> = g.edges().zip(&drop).filter(|(_, &d)| !d).map(|(e, _)| e).collect();
        let sub = Graph::new(g.vertex_count(), &edges).unwrap();
        let n = g.vertex_count();
        let big = min_product_c(&g, n, n).unwrap();
        let small = min_product_c(&sub, n, n).unwrap();
        prop_assert!(small.c <= big.c);
    }
}
