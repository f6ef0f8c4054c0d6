// A subdivided grid with a few subdivision vertices removed still keeps a
// long run of consecutive columns connected.

use std::error::Error;

use psw::generators::SubdividedGrid;
use psw::graph::VertexSet;
use psw::witness::grid_connectivity;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sg = SubdividedGrid::uniform(6, 3, 1)?;
    println!("6x3 grid, one vertex per horizontal edge: {} vertices", sg.graph.vertex_count());
    // Cut all three rows between columns 1 and 2.
    let s: VertexSet = (0..3).flat_map(|j| sg.chain(1, j)).collect();
    let p = 2;
    let run = grid_connectivity(&sg, &s, p)?;
    println!("removed {:?}, p = {p}: columns {}..={} stay connected", s.as_slice(), run.first, run.last);
    assert!(run.len() >= sg.columns().div_ceil(p));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
