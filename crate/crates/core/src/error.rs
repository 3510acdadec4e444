use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image sequence is not a bijection of 1..={degree}: {detail}")]
    NotABijection { degree: usize, detail: String },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("cannot parse permutation {text:?}: {detail}")]
    PermParse { text: String, detail: String },

    #[error("enumeration overflow: group order {order} exceeds cap {cap}")]
    EnumerationOverflow { order: String, cap: u64 },

    #[error("intersection overflow: both group orders ({left}, {right}) exceed cap {cap}")]
    IntersectionOverflow {
        left: String,
        right: String,
        cap: u64,
    },

    #[error("group has no generators")]
    NoGenerators,

    #[error("generator {index} is the identity")]
    IdentityGenerator { index: usize },

    #[error("generator {index} is not an involution")]
    NotAnInvolution { index: usize },

    #[error("generators {first} and {second} are equal")]
    DuplicateGenerator { first: usize, second: usize },

    #[error("commuting property violated by generators {i} and {j}")]
    CommutingViolation { i: usize, j: usize },

    #[error("label {label} has no edges")]
    EmptyLabelClass { label: usize },

    #[error("label {label} is not a partial matching: vertex {vertex} is covered twice")]
    NotAMatching { label: usize, vertex: usize },

    #[error("edge label {label} out of range 0..{rank}")]
    LabelOutOfRange { label: usize, rank: usize },

    #[error("invalid edge ({u}, {v}): {detail}")]
    InvalidEdge { u: usize, v: usize, detail: String },

    #[error("cannot parse graph file: line {line}: {detail}")]
    GraphParse { line: usize, detail: String },

    #[error("generator index {index} out of range for rank {rank}")]
    RankIndexOutOfRange { index: usize, rank: usize },

    #[error("all generators removed; a parabolic subgroup needs at least one generator")]
    EmptyParabolic,

    #[error("maximal parabolic subgroup for label {label} is transitive; no fracture edge qualifies")]
    TransitiveParabolic { label: usize },

    #[error("fracture graph invariant violated: {detail}")]
    FractureInvariant { detail: String },

    #[error("fracture enumeration exceeds cap {cap}")]
    FractureOverflow { cap: u64 },

    #[error("family {family}: {detail}")]
    Family { family: String, detail: String },

    #[error("unknown family tag {0:?}")]
    UnknownFamily(String),

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("isomorphism search exceeded the node budget {budget}")]
    IsomorphismBudget { budget: u64 },

    #[error("rank {rank} is too large for the subset-pair oracle")]
    RankTooLargeForOracle { rank: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
