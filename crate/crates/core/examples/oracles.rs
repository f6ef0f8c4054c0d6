// Brute-force answers for tiny graphs: the least clique factor of a tree
// product, and exact treewidth.

use std::error::Error;

use psw::constructions::treewidth_at_most_2;
use psw::generators::GhGraph;
use psw::graph::Graph;
use psw::oracle::{exact_treewidth_tiny, exhaustive_lemma_sweep, min_product_c, Lemma, SweepParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for h in [1, 2] {
        let gh = GhGraph::new(h)?;
        let r = min_product_c(&gh.graph, 7, 6)?;
        println!("G_{h}: min c = {}, tree parts {:?}", r.c, r.tree_partition.parts());
    }

    let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    println!("K4: treewidth {}, tw <= 2 says {}", exact_treewidth_tiny(&k4)?, treewidth_at_most_2(&k4).treewidth_le_2);

    let p = SweepParams { height: 4, exhaustive: false, samples: 500, ..SweepParams::default() };
    let r = exhaustive_lemma_sweep(Lemma::Escape, &p)?;
    println!("escape sweep on T_4: {} cases, {} failures", r.cases, r.failures);
    print!("{}", r.to_csv().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
