pub mod arith;
pub mod cli;
pub mod constructions;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod percolation;
pub mod products;
pub mod suite;
pub mod witness;
