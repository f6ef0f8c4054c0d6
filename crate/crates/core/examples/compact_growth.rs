// Growing a compact family: every part doubles by stepping to children
// of the blocked set that still escape to a leaf.

use std::error::Error;

use psw::generators::CompleteBinaryTree;
use psw::graph::VertexSet;
use psw::percolation::{grow_compact, validate_compact, CompactFamily};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t = CompleteBinaryTree::new(10)?;
    // Two anchors at depth 1; the family starts as the anchors themselves.
    let f = CompactFamily::singletons(&t, &VertexSet::from(vec![1, 2]));
    assert!(validate_compact(&f).is_empty());
    println!("start: k = {}, ell = {}, m = {}, parts {:?}", f.k, f.ell, f.m, f.parts);

    let s = VertexSet::from(vec![1, 2, 3]);
    let grown = grow_compact(&t, &f, &s)?;
    let g = &grown.family;
    println!("grown: k = {}, ell = {}, parts {:?}", g.k, g.ell, g.parts);
    assert!(validate_compact(g).is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
