use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a poset: {axiom} fails for ({0}, {1})", .pair.0, .pair.1)]
    NotAPoset {
        axiom: &'static str,
        pair: (String, String),
    },

    #[error("objects {0} and {1} have no minimal common ancestor")]
    NoMinimalCommonAncestor(String, String),

    #[error("category has no initial object")]
    NoInitialObject,

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("duplicate object `{0}`")]
    DuplicateObject(String),

    #[error("size limit exceeded: {what} is {got}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        got: u128,
        limit: u128,
    },

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),

    #[error("reduction is not measure preserving at atom `{atom}`: expected {expected}, got {got}")]
    NotMeasurePreserving {
        atom: String,
        expected: String,
        got: String,
    },

    #[error("diagram does not commute along {from} -> {to}")]
    NotCommutative { from: String, to: String },

    #[error("arrow {from} -> {to} is not part of the shape")]
    NotAnArrow { from: String, to: String },

    #[error("shapes differ")]
    ShapeMismatch,

    #[error("atom `{0}` has zero weight")]
    ZeroWeightAtom(String),

    #[error("reduction {from} -> {to} is not an isomorphism")]
    NotAnIsomorphism { from: String, to: String },

    #[error("object `{0}` is not terminal")]
    NotTerminal(String),

    #[error("operation needs a full (subset lattice) shape")]
    NotAFullShape,

    #[error("coupling marginals do not match the {0} initial space")]
    MarginalMismatch(&'static str),

    #[error("vector is not in the cone: generator {label} pairs to {value}")]
    NotInCone { label: String, value: String },

    #[error("cone is not pointed (constraint rank {rank} < dimension {dim})")]
    NotPointed { rank: usize, dim: usize },

    #[error("exact rank computation failed")]
    NumericalRankFailure,

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
