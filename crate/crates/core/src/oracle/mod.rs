//! Brute-force ground truth for tiny instances.

mod product;
mod separators;
mod sweep;
mod treewidth;

pub use product::{min_product_c, MinProduct, MIN_PRODUCT_MAX_VERTICES};
pub use separators::{is_balanced_separator, minimal_balanced_separators};
pub use sweep::{exhaustive_lemma_sweep, Lemma, SweepParams, SweepReport};
pub use treewidth::{exact_treewidth_tiny, TREEWIDTH_MAX_VERTICES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is over the budget of {limit}")]
    BudgetExceeded { what: String, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
