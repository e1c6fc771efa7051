use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("duplicate label `{label}` on side {side}")]
    DuplicateLabel { side: char, label: String },

    #[error("negative mass {mass} at `{label}`")]
    NegativeMass { label: String, mass: Rational },

    #[error("no mass given for `{label}` on side {side}")]
    MissingMass { side: char, label: String },

    #[error("mass given for unknown label `{label}` on side {side}")]
    UnknownMassLabel { side: char, label: String },

    #[error("totals differ: w(A) = {a_total}, w(B) = {b_total}")]
    UnbalancedTotals {
        a_total: Box<Rational>,
        b_total: Box<Rational>,
    },

    #[error("relation pair ({a}, {b}) references an unknown label")]
    DanglingRelationPair { a: String, b: String },

    #[error("measures must have total mass 1, found {total}")]
    NotProbability { total: Rational },

    #[error("subset enumeration over {size} vertices exceeds the cap of {cap}")]
    SubsetCapExceeded { size: usize, cap: usize },

    #[error("graph with {size} vertices exceeds the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("condition w(U) <= w(N(U)) is violated: {0}")]
    ConditionViolated(String),

    #[error("coupling puts mass on ({a}, {b}), which is not an edge")]
    UnsupportedEdge { a: String, b: String },

    #[error("edge set contains a cycle")]
    NotAForest,

    #[error("sides differ in size: |A| = {a}, |B| = {b}")]
    UnequalSides { a: usize, b: usize },

    #[error("blow-up needs {copies} copies, cap is {cap}")]
    BlowUpTooLarge { copies: String, cap: usize },

    #[error("epsilon {epsilon} is below the minimal deficiency {minimal}")]
    EpsilonTooSmall {
        epsilon: Box<Rational>,
        minimal: Box<Rational>,
    },

    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(Rational),
}

impl Error {
    /// Stable name of the variant, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DuplicateLabel { .. } => "DuplicateLabel",
            Error::NegativeMass { .. } => "NegativeMass",
            Error::MissingMass { .. } => "MissingMass",
            Error::UnknownMassLabel { .. } => "UnknownMassLabel",
            Error::UnbalancedTotals { .. } => "UnbalancedTotals",
            Error::DanglingRelationPair { .. } => "DanglingRelationPair",
            Error::NotProbability { .. } => "NotProbability",
            Error::SubsetCapExceeded { .. } => "SubsetCapExceeded",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::ConditionViolated(_) => "ConditionViolated",
            Error::UnsupportedEdge { .. } => "UnsupportedEdge",
            Error::NotAForest => "NotAForest",
            Error::UnequalSides { .. } => "UnequalSides",
            Error::BlowUpTooLarge { .. } => "BlowUpTooLarge",
            Error::EpsilonTooSmall { .. } => "EpsilonTooSmall",
            Error::NegativeEpsilon(_) => "NegativeEpsilon",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
