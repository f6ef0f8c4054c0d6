// Extract a certificate from a tree-partition and layering of G_h, audit
// it, then show that a corrupted copy fails the audit.

use std::error::Error;

use psw::generators::GhGraph;
use psw::products::{bfs_layering, HPartition};
use psw::witness::{audit, extract_witness, lower_bound_report, ProductClaim, WitnessCertificate, WitnessConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gh = GhGraph::new(14)?;
    let n = gh.graph.vertex_count();
    let lay = bfs_layering(&gh.graph, 0)?;

    // Everything in one bag: the bag alone is big enough.
    let tp = HPartition::one_bag(n);
    let cert = extract_witness(&gh, &tp, &lay, &WitnessConfig::default())?;
    audit(&cert, &gh, &tp, &lay)?;
    let f = cert.final_cell.as_ref().expect("early exit has a cell");
    println!("one bag: {:?}, cell {} >= bound {}", cert.branch, f.cell, f.bound);

    let claim = ProductClaim { c: 1, delta: 3, treewidth: 1 };
    let r = lower_bound_report(&cert, &claim)?;
    println!("claim c=1, delta=3, tw=1: {}", r.verdict);

    // Singletons over G_h itself: the host has cycles, so the run stops.
    let singles = HPartition::singletons(gh.graph.clone());
    let cert2 = extract_witness(&gh, &singles, &lay, &WitnessConfig::default())?;
    audit(&cert2, &gh, &singles, &lay)?;
    println!("singletons: {}", cert2.infeasible.as_ref().expect("infeasible"));

    let mut bad: WitnessCertificate = WitnessCertificate::from_json(&cert.to_json())?;
    bad.final_cell.as_mut().expect("cell").cell += 1;
    let err = audit(&bad, &gh, &tp, &lay).expect_err("tampering is caught");
    println!("tampered: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
