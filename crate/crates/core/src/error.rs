use alloc::string::String;

use crate::equation::Family;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("Cayley table is not square")]
    NonSquare,
    #[error("Cayley table is empty")]
    EmptyTable,
    #[error("table entry at ({0}, {1}) is out of range")]
    EntryOutOfRange(usize, usize),
    #[error("operation is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("semigroup order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("z0 = {0} is not in the center")]
    NonCentralZ0(usize),
    #[error("equation requires z0 but none was supplied")]
    MissingZ0,
    #[error("equation does not use z0 but one was supplied")]
    UnexpectedZ0,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid involutive morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("mu is not admissible: mu({0}) mu(tau({0})) != 1")]
    NotAdmissible(usize),
    #[error("function vanishes at z0")]
    ZeroAtZ0,
    #[error("sign condition mu(z0) chi(tau(z0)) = {0} chi(z0) fails")]
    SignConditionFailed(&'static str),
    #[error("constructed function has residual {residual:e} against {family}")]
    ResidualCheckFailed { family: Family, residual: f64 },
    #[error("no lemma suite for family {0}")]
    UnknownFamily(Family),
    #[error("eigen solver failed to converge")]
    EigenSolverFailure,
    #[error("function has a non-finite entry at {0}")]
    NonFinite(usize),
}
