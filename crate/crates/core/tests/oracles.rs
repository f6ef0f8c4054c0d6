use psw::constructions::build_leftmost_path_partition;
use psw::generators::GhGraph;
use psw::graph::{Graph, VertexSet};
use psw::oracle::{exact_treewidth_tiny, is_balanced_separator, min_product_c, minimal_balanced_separators};
use psw::products::validate_embedding;
use psw::suite::MIN_PRODUCT_C_G2;
use psw::witness::check_separator_depths;

#[test]
fn frozen_min_c_of_g2_is_recomputed() {
    let gh = GhGraph::new(2).unwrap();
    let r = min_product_c(&gh.graph, 7, 6).unwrap();
    assert_eq!(r.c, MIN_PRODUCT_C_G2);
    validate_embedding(&gh.graph, &r.embedding).unwrap();
    assert!(r.tree_partition.host().is_tree());
}

#[test]
fn min_c_of_tiny_graphs() {
    assert_eq!(min_product_c(&Graph::empty(1), 1, 0).unwrap().c, 1);
    let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(min_product_c(&k3, 2, 1).unwrap().c, 1);
    assert_eq!(min_product_c(&k3, 1, 0).unwrap().c, 3);
    assert!(min_product_c(&GhGraph::new(3).unwrap().graph, 8, 8).is_err());
}

#[test]
fn treewidth_of_the_g2_chain_host() {
    let lp = build_leftmost_path_partition(&GhGraph::new(2).unwrap());
    assert_eq!(lp.host().vertex_count(), 4);
    assert_eq!(exact_treewidth_tiny(lp.host()).unwrap(), 2);
}

#[test]
fn g2_separators() {
    let gh = GhGraph::new(2).unwrap();
    let small = minimal_balanced_separators(&gh, 3).unwrap();
    assert!(small.contains(&VertexSet::from(vec![2, 4])));
    for s in &small {
        assert!(is_balanced_separator(&gh.graph, s));
        assert!(check_separator_depths(&gh, s).unwrap().pass);
    }
    let all = minimal_balanced_separators(&gh, 7).unwrap();
    assert!(!all.is_empty() && small.iter().all(|s| all.contains(s)));
}
