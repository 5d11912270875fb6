use thiserror::Error;

use crate::schmerl::ConditionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a set must have at least one element")]
    EmptySet,
    #[error("elements must be positive integers")]
    ZeroElement,
    #[error("elements must be strictly increasing ({prev} is followed by {next})")]
    NotAscending { prev: u64, next: u64 },
    #[error("element {element} lies beyond the horizon {horizon}")]
    BeyondHorizon { element: u64, horizon: u64 },
    #[error("bound {bound} exceeds the universe cap {cap}")]
    ResourceCap { bound: u64, cap: u64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("conditions C1/C2 do not hold for this prefix")]
    ConditionsFailed(Box<ConditionReport>),
    /// A step of the constructive proof could not be carried out on the
    /// concrete set; the set does not satisfy the theorem's hypotheses.
    #[error("condition violation: {0}")]
    ConditionViolation(String),
}
