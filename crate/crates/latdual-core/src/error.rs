//! Shared error type for lattice construction and analysis.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The cover relation contains a cycle and so generates no partial order.
    #[error("not a poset: cover cycle through elements {cycle:?}")]
    NotAPoset { cycle: Vec<usize> },

    /// A pair of elements has no unique least upper or greatest lower bound.
    /// `candidates` lists the minimal upper bounds (for a join failure) or
    /// maximal lower bounds (for a meet failure).
    #[error("not a lattice: {op} of {a} and {b} is not unique; extremal bounds {candidates:?}")]
    NotALattice {
        a: usize,
        b: usize,
        op: &'static str,
        candidates: Vec<usize>,
    },

    /// The order has no unique minimum or maximum element.
    #[error("no {which} element; extremal elements {candidates:?}")]
    NoBounds {
        which: &'static str,
        candidates: Vec<usize>,
    },

    /// An enumeration or construction would exceed a size cap.
    #[error("size limit exceeded for {what}: size {size} is over the cap {cap}")]
    SizeLimitExceeded {
        what: String,
        size: usize,
        cap: usize,
    },

    /// A filter and an ideal overlap where they are required to be disjoint.
    #[error("filter and ideal are not disjoint; common elements {common:?}")]
    NotDisjoint { common: Vec<usize> },

    /// The lattice contains a diamond or a pentagon sublattice.
    #[error("not distributive: {pattern} embeds via {embedding:?}")]
    NotDistributive {
        pattern: String,
        embedding: Vec<usize>,
    },

    /// A property that is a theorem for the given input class failed on a
    /// concrete input; this always indicates an implementation bug.
    #[error("inconsistent axioms: {detail}")]
    InconsistentAxioms { detail: String },

    /// A reconstruction theorem failed on concrete input; this always
    /// indicates an implementation bug.
    #[error("round trip failure: {detail}")]
    RoundTripFailure { detail: String },

    /// An operation was invoked outside its stated precondition.
    #[error("precondition violated: {detail}")]
    PreconditionViolated { detail: String },

    /// The failure classifier built an embedding that does not verify.
    /// Full context is kept so the case can be reproduced.
    #[error("classifier mismatch: {detail}")]
    ClassifierMismatch { detail: String },

    /// No fixture with the requested name exists.
    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },

    /// A generator parameter is outside its documented range.
    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: String,
    },

    /// Input text failed to parse or does not match the expected JSON shape.
    #[error("invalid input: {detail}")]
    Parse { detail: String },
}
