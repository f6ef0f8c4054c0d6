// Strong products, and the two-way conversion between an embedding into
// H ⊠ P ⊠ K_c and a partition pair.

use std::error::Error;

use psw::generators::GhGraph;
use psw::graph::Graph;
use psw::products::{
    bfs_layering, embedding_to_partitions, partitions_to_embedding, strong_product, validate_embedding, HPartition,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let k2 = Graph::new(2, &[(0, 1)])?;
    let p3 = Graph::new(3, &[(0, 1), (1, 2)])?;
    let sp = strong_product(&k2, &p3)?;
    println!("K2 ⊠ P3: {} vertices, {} edges", sp.graph.vertex_count(), sp.graph.edge_count());
    println!("vertex 4 is {:?}", sp.coords(4));

    // G_3 over the one-vertex host with BFS layers: the cells are the layers.
    let gh = GhGraph::new(3)?;
    let g = &gh.graph;
    let lay = bfs_layering(g, 0)?;
    let tp = HPartition::one_bag(g.vertex_count());
    let c = lay.layers().iter().map(|l| l.len()).max().unwrap_or(0);
    let e = partitions_to_embedding(g, &tp, &lay, c)?;
    validate_embedding(g, &e)?;
    println!("G_3 ⊆ K1 ⊠ P_{} ⊠ K_{c}", e.path_vertices);

    let (tp2, lay2, c2) = embedding_to_partitions(g, &e)?;
    assert_eq!((tp2, lay2, c2), (tp, lay, c));
    println!("round trip recovers the partition pair");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
