use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::graph::{Vertex, VertexSet};
use crate::percolation::CompactFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Le => "<=",
        }
    }
}

/// A named comparison between two exact rationals, stored as strings such
/// as `"7"` or `"-3/10"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub holds: bool,
}

impl Inequality {
    pub fn new(name: impl Into<String>, lhs: &BigRational, relation: Relation, rhs: &BigRational) -> Self {
        Inequality {
            name: name.into(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            holds: relation.holds(lhs, rhs),
        }
    }

    /// Re-evaluates the comparison from the stored numbers.
    pub fn evaluate(&self) -> Option<bool> {
        let lhs = BigRational::from_str(&self.lhs).ok()?;
        let rhs = BigRational::from_str(&self.rhs).ok()?;
        Some(self.relation.holds(&lhs, &rhs))
    }

    /// `evaluate` agrees with the recorded verdict.
    pub fn is_consistent(&self) -> bool {
        self.evaluate() == Some(self.holds)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {} {}", self.name, self.lhs, self.relation.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Main,
    EarlyExit,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxBag {
    pub x: Vertex,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRecord {
    pub columns: usize,
    pub rows: usize,
    pub removed: usize,
    pub p: usize,
    pub first: usize,
    pub last: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartupCase {
    Leaves,
    Grid,
}

/// How the first unrelated set was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartupRecord {
    /// Node whose bag is a balanced separator.
    pub balanced: Vertex,
    pub i0: usize,
    pub depths_hit: bool,
    pub y_size: usize,
    pub leaves: usize,
    pub z_size: usize,
    pub case: StartupCase,
    pub grid: Option<GridRecord>,
    /// Node whose bag contains `r`.
    pub x: Vertex,
    pub r: VertexSet,
    pub checks: Vec<Inequality>,
}

/// The family `R_i` held by bag `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub i: usize,
    pub x: Vertex,
    pub family: CompactFamily,
    /// The grid used to select this family from the grown one; absent for
    /// the first stage.
    pub grid: Option<GridRecord>,
    pub checks: Vec<Inequality>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TRecord {
    pub t1: i64,
    pub t2: i64,
    pub t: usize,
    pub overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalCell {
    pub x: Vertex,
    pub y: usize,
    pub cell: usize,
    pub bound: usize,
    /// The set whose spread over the layers gives the cell.
    pub part: VertexSet,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFiles {
    pub graph: Option<String>,
    pub tree_partition: Option<String>,
    pub layering: Option<String>,
}

/// A replayable record of one run of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub h: usize,
    pub c: String,
    pub c_overridden: bool,
    pub alpha: String,
    pub branch: Branch,
    pub max_bag: Option<MaxBag>,
    pub startup: Option<StartupRecord>,
    pub t: Option<TRecord>,
    pub stages: Vec<StageRecord>,
    #[serde(rename = "final")]
    pub final_cell: Option<FinalCell>,
    pub infeasible: Option<super::Infeasible>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<InputFiles>,
}

impl WitnessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn inequality_round_trip() {
        let q = Inequality::new("q", &int(3), Relation::Gt, &ratio(-17, 10));
        assert!(q.holds);
        assert_eq!(q.rhs, "-17/10");
        assert!(q.is_consistent());
        let mut bad = q.clone();
        bad.lhs = "-2".into();
        assert!(!bad.is_consistent());
        bad.lhs = "x".into();
        assert_eq!(bad.evaluate(), None);
    }
}
