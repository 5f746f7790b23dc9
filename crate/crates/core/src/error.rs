//! Error type shared by the whole crate.

use thiserror::Error;

use crate::graph::{Family, GenSet};

/// Everything that can go wrong when building graphs, groups, posets or
/// evaluating formulas. Each variant carries a stable machine-readable
/// [`code`](Error::code) used by the CLI's single-line error format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is out of range for {family}: minimum is {min}")]
    RankOutOfRange {
        family: Family,
        rank: usize,
        min: usize,
    },

    #[error("generator set {nodes} induces a component that is not of type A/B/D")]
    UnclassifiableComponent { nodes: GenSet },

    #[error("{found} is not a subset of the graph's generators {nodes}")]
    NotInGraph { found: GenSet, nodes: GenSet },

    #[error("elements come from different models ({left} vs {right})")]
    ModelMismatch { left: String, right: String },

    #[error("graph {family}_{rank} does not match the elements' model {model}")]
    GraphModelMismatch {
        family: Family,
        rank: usize,
        model: String,
    },

    #[error(
        "group of order {order} exceeds the enumeration cap of {cap} elements \
         (enumeration would need roughly {} MiB)",
        order / 10_486
    )]
    BudgetExceeded { order: u128, cap: usize },

    #[error("elements are not comparable in the weak order")]
    NotComparable,

    #[error("meet/join does not exist on this carrier (not a lattice)")]
    NotALattice,

    #[error("descent sets must satisfy I ⊆ J ⊆ S; got I = {i_set}, J = {j_set}")]
    DescentSetsNotNested { i_set: GenSet, j_set: GenSet },

    #[error(
        "interior condition violated for n = {n}, I = {i_set}: {reason}; \
         use the descent-class route instead"
    )]
    InteriorConditionViolated {
        n: usize,
        i_set: GenSet,
        reason: String,
    },

    #[error(
        "rank {rank} exceeds the subset-iteration budget ({max}); use the series extraction route"
    )]
    RankBudget { rank: usize, max: usize },

    #[error("alternating permutations need n ≥ 2, got {n}")]
    AlternatingRange { n: usize },

    #[error("the D-type series starts at rank 2, got {rank}")]
    DSeriesRange { rank: usize },

    #[error("brute-force subset count capped at rank {max}, got {rank}")]
    SubsetCountCap { rank: usize, max: usize },

    #[error("invalid window {window:?} for model {model}: {reason}")]
    InvalidWindow {
        model: String,
        window: Vec<i32>,
        reason: String,
    },

    #[error("generator index {index} is not a generator of {model}")]
    BadGenerator { index: usize, model: String },

    #[error("family {family} is not supported here: {reason}")]
    UnsupportedFamily { family: Family, reason: String },

    #[error("unknown verification suite {name:?}")]
    UnknownSuite { name: String },
}

impl Error {
    /// Stable error code for machine-parseable output (`error: <code>: <message>`).
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankOutOfRange { .. } => "rank-out-of-range",
            Error::UnclassifiableComponent { .. } => "unclassifiable-component",
            Error::NotInGraph { .. } => "not-in-graph",
            Error::ModelMismatch { .. } => "model-mismatch",
            Error::GraphModelMismatch { .. } => "graph-model-mismatch",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::NotComparable => "not-comparable",
            Error::NotALattice => "not-a-lattice",
            Error::DescentSetsNotNested { .. } => "descent-sets-not-nested",
            Error::InteriorConditionViolated { .. } => "interior-condition-violated",
            Error::RankBudget { .. } => "rank-budget",
            Error::AlternatingRange { .. } => "alternating-range",
            Error::DSeriesRange { .. } => "d-series-range",
            Error::SubsetCountCap { .. } => "subset-count-cap",
            Error::InvalidWindow { .. } => "invalid-window",
            Error::BadGenerator { .. } => "bad-generator",
            Error::UnsupportedFamily { .. } => "unsupported-family",
            Error::UnknownSuite { .. } => "unknown-suite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
