// G_h has a partition with unit cells whose host is outerplanar; the host
// is not a tree, and a large boundary shows why no tree host can do this.

use std::error::Error;

use psw::constructions::{
    build_leftmost_path_partition, find_unshared_boundary, outerplanarity_check_small, treewidth_at_most_2,
};
use psw::generators::GhGraph;
use psw::products::{partitions_to_embedding, validate_embedding, validate_hpartition};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for h in [2, 4, 6] {
        let gh = GhGraph::new(h)?;
        let lp = build_leftmost_path_partition(&gh);
        assert!(validate_hpartition(&gh.graph, &lp.partition)?.is_empty());
        let e = partitions_to_embedding(&gh.graph, &lp.partition, &lp.layering, 1)?;
        validate_embedding(&gh.graph, &e)?;
        let tw = treewidth_at_most_2(lp.host());
        let op = outerplanarity_check_small(lp.host());
        println!(
            "h = {h}: host has {} vertices, {} edges; tw <= 2: {}, outerplanar: {:?}",
            lp.host().vertex_count(),
            lp.host().edge_count(),
            tw.treewidth_le_2,
            op.outerplanar
        );
        if let Some(b) = find_unshared_boundary(&gh.graph, &lp.partition) {
            println!("  part {} sees {} boundary vertices, at most {} per part", b.part, b.boundary, b.max_per_part);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
