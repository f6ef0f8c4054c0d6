// Balanced separators of G_h meet many depths: enumerate the minimal ones
// for a small h and check the depths each of them hits.

use std::error::Error;

use psw::generators::GhGraph;
use psw::oracle::minimal_balanced_separators;
use psw::witness::{check_separator_depths, separator_i0};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gh = GhGraph::new(3)?;
    let seps = minimal_balanced_separators(&gh, 4)?;
    println!("G_3 has {} minimal balanced separators of size <= 4", seps.len());
    for s in seps.iter().take(5) {
        let rep = check_separator_depths(&gh, s)?;
        println!("  {:?}: i0 = {}, depths hit {:?}", s.as_slice(), rep.i0, rep.hits.iter().map(|d| d.depth).collect::<Vec<_>>());
        assert!(rep.pass);
    }
    println!("i0 for |S| = 3 at h = 20 is {}", separator_i0(20, 3));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
