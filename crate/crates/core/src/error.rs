use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("malformed cone: {0}")]
    MalformedCone(String),

    #[error("no {rank}-subset of the semigroup generators is a Z-basis of the character lattice")]
    NoUnimodularSubset { rank: usize },

    #[error("lattice point {0} is not in the cone")]
    NotInCone(String),

    #[error("the zero vector has no decomposition into indecomposables")]
    ZeroVector,

    #[error("{0} is not a relation among the semigroup generators")]
    NotARelation(String),

    #[error("character {0} is not in the dual semigroup")]
    MNotInSemigroup(String),

    #[error("series truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("cannot substitute a non-unit into invertible variable {0}")]
    NonUnitIntoInvertible(String),

    #[error("division by {0}, which is not a unit monomial")]
    NonMonomialDivision(String),

    #[error("polynomial has negative exponents: {0}")]
    LaurentInput(String),

    #[error("t-coefficient {degree} of relation {relation} does not cancel: {residue}")]
    LeadingTermMismatch {
        relation: String,
        degree: usize,
        residue: String,
    },

    #[error("hypothesis {clause} fails for equation ({q},{s}): {detail}")]
    HypothesisViolation {
        clause: &'static str,
        q: usize,
        s: usize,
        detail: String,
    },

    #[error("equation depth {available} is too small: lifting to order {order} needs {needed}")]
    DepthExhausted {
        order: usize,
        needed: usize,
        available: usize,
    },

    #[error("Z[{i}][{s}] is outside the computed window")]
    OutOfWindow { i: usize, s: usize },

    #[error("series is not regular modulo the maximal ideal up to t^{truncation}")]
    NotRegular { truncation: usize },

    #[error("coefficient {0} has no invertible constant term")]
    NonUnitCoefficient(String),

    #[error("truncation t^{truncation} too small for order {order} at m-adic order {m_order} (need {needed})")]
    TruncationTooSmall {
        truncation: usize,
        order: usize,
        m_order: usize,
        needed: usize,
    },

    #[error("verification failed at order {order}: {detail}")]
    VerificationFailed { order: usize, detail: String },

    #[error("pairing {0} does not fit a machine-sized jet depth")]
    DepthOverflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoUnimodularSubset { .. }
            | Error::HypothesisViolation { .. }
            | Error::LeadingTermMismatch { .. } => 2,
            Error::VerificationFailed { .. } => 3,
            _ => 1,
        }
    }
}
