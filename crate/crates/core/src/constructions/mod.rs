//! A partition of `G_h` with unit cells over an outerplanar host, and the
//! structural checks used to verify it.

mod leftmost;
mod structure;

pub use leftmost::{build_leftmost_path_partition, find_unshared_boundary, LeftmostPartition, UnsharedBoundary};
pub use structure::{
    outerplanarity_check_small, outerplanarity_check_with_budget, treewidth_at_most_2, ReductionStep, StructureVerdict,
    StructureWitness, DEFAULT_OUTERPLANAR_BUDGET,
};
