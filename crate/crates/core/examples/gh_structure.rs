// Build G_h, check its counts, and write it as an edge list.

use std::error::Error;

use psw::generators::GhGraph;
use psw::graph::{read_edge_list, write_edge_list};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for h in [1, 2, 5, 10] {
        let gh = GhGraph::new(h)?;
        let g = &gh.graph;
        println!("G_{h}: {} vertices, {} edges, max degree {}", g.vertex_count(), g.edge_count(), g.max_degree());
        assert_eq!(g.edge_count(), GhGraph::expected_edge_count(h));
    }

    let g2 = GhGraph::new(2)?;
    println!("level paths of G_2: {:?}", g2.level_paths().collect::<Vec<_>>());
    let mut buf = Vec::new();
    write_edge_list(&g2.graph, &mut buf)?;
    print!("{}", String::from_utf8(buf.clone())?);
    assert_eq!(read_edge_list(buf.as_slice())?, g2.graph);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
