//! Crate-wide error type.
//!
//! Every variant name is part of the error message so that callers (and the
//! CLI) can surface the failure class without pattern matching on strings.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A tensor-product basis index is malformed or out of range.
    #[error("InvalidIndex: {0}")]
    InvalidIndex(String),

    /// Matrix/vector dimensions do not match the operation's contract.
    #[error("ShapeError: {0}")]
    ShapeError(String),

    /// A numerical decomposition failed to converge or produced garbage.
    #[error("NumericalError: {0}")]
    NumericalError(String),

    /// Input data violates a documented precondition.
    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    /// A party index is outside the range of the dimension list.
    #[error("InvalidParty: party {party} out of range for {n_parties} parties")]
    InvalidParty { party: usize, n_parties: usize },

    /// Mixed-state reduction produced vectors that are not orthogonal,
    /// signalling inconsistent input supports.
    #[error("ReductionError: {0}")]
    ReductionError(String),

    /// A party partition group is not contiguous under the global ordering.
    #[error("UnsupportedPartition: {0}")]
    UnsupportedPartition(String),

    /// A party partition does not cover every party exactly once.
    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),

    /// Requested a measurement witness for a party whose span is full.
    #[error("WitnessUnavailable: party {party} admits only trivial measurements")]
    WitnessUnavailable { party: usize },

    /// Family parameters outside the range for which the construction is
    /// mutually orthogonal.
    #[error("UnsupportedFamilyParams: {0}")]
    UnsupportedFamilyParams(String),

    /// Unknown fixture name.
    #[error("NotFound: {0}")]
    NotFound(String),

    /// Symbolic instance outside the supported desk-scale gate.
    #[error("InstanceTooLarge: {0}")]
    InstanceTooLarge(String),

    /// An elimination constraint is not linear in the pivot with the stated
    /// partner coefficient.
    #[error("BadConstraint: {0}")]
    BadConstraint(String),

    /// Every candidate pivot coefficient is symbolically zero.
    #[error("DegeneratePivot: {0}")]
    DegeneratePivot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
