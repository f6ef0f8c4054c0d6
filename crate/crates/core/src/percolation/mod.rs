//! Escape paths in complete binary trees and the growth of compact families.
//!
//! A set `S` of tree vertices blocks paths to the leaves. The escape
//! routines find vertices just below `S` (parent in `S`, or the root) from
//! which a leaf can still be reached without touching `S`, at a depth that
//! is logarithmic in `|S|`.

mod compact;
mod escape;

pub use compact::{grow_compact, validate_compact, CompactFamily, CompactViolation, GrownFamily};
pub use escape::{
    escape_path, find_escape, find_escape_in, find_two_escapes, find_two_escapes_in, is_compatible, Escape,
    TwoEscapes,
};

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PercolationError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no escape vertex exists")]
    NoEscape,
    #[error("the root has no parent")]
    RootHasNoParent,
    #[error("vertex {0} is not in the tree")]
    OutOfTree(Vertex),
}
