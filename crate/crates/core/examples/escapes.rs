// Escape vertices in a complete binary tree: a vertex whose parent is
// blocked but which still reaches a leaf, found close to the root.

use std::error::Error;

use psw::generators::CompleteBinaryTree;
use psw::graph::VertexSet;
use psw::percolation::{find_escape, find_two_escapes, is_compatible};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t = CompleteBinaryTree::new(4)?;
    let s = VertexSet::from(vec![0, 1, 4, 9]);
    let e = find_escape(&t, &s)?;
    println!("blocked {:?}: escape {} at depth {} via {:?}", s.as_slice(), e.vertex, t.depth(e.vertex), e.path);
    assert!((1usize << t.depth(e.vertex)) <= 2 * s.len());
    assert!(is_compatible(&t, e.vertex, &s)?.is_some());

    let both = find_two_escapes(&t, &VertexSet::from(vec![0, 1, 2]))?;
    println!("two escapes: {} on the left, {} on the right", both.left.vertex, both.right.vertex);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
