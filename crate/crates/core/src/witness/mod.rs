//! The lower-bound pipeline for tree-partitions of `G_h`.
//!
//! Given a tree-partition `{B_x}` and a layering `{P_y}` of `G_h`, the
//! pipeline locates a cell `B_x ∩ P_y` that is provably large and writes a
//! certificate recording every step with exact arithmetic. Any inequality
//! that the argument needs and that fails at the given size ends the run
//! with an [`Infeasible`] record instead of a certificate.

mod audit;
mod certificate;
mod extract;
mod grid;
mod separator;
mod startup;

pub use audit::{audit, lower_bound_report, AuditError, LowerBoundReport, ProductClaim};
pub use certificate::{
    Branch, FinalCell, GridRecord, Inequality, InputFiles, MaxBag, Relation, StageRecord, StartupCase, StartupRecord,
    TRecord, WitnessCertificate,
};
pub use extract::{default_c, extract_witness, iterate, IterationState, WitnessConfig};
pub use grid::{escape_grid, grid_connectivity, ColumnRun, EscapeGrid};
pub use separator::{check_separator_depths, find_balanced_bag, separator_i0, DepthHit, SeparatorDepthReport};
pub use startup::{startup, StartupOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::GenError;
use crate::graph::{GraphError, Vertex};
use crate::percolation::PercolationError;
use crate::products::PartitionError;

/// The stage at which the argument stopped, and the inequality that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Infeasible {
    pub stage: String,
    pub inequality: Inequality,
}

impl std::fmt::Display for Infeasible {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "infeasible at {}: {}", self.stage, self.inequality)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("removing the set leaves a component with more than half the vertices")]
    NotBalancedSeparator,
    #[error("vertex {0} is not a subdivision vertex")]
    SNotSubdivisionOnly(Vertex),
    #[error("{removed} removed vertices, the limit is below {limit}")]
    TooManyRemoved { removed: usize, limit: usize },
    #[error("partition width {width} is not below {limit}")]
    WidthTooLarge { width: usize, limit: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Infeasible(Infeasible),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Percolation(#[from] PercolationError),
}
