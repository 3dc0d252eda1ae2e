use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("node budget exhausted: projected {projected} extension attempts exceeds budget {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },

    #[error("series has no multiplicative inverse (constant term {0} is not a unit)")]
    NotInvertible(String),

    #[error("indeterminate `{0}` has no assigned value")]
    MissingAssignment(String),

    #[error("polynomial has degree 0 in `{0}`")]
    DegreeZero(String),

    #[error("root at the origin is not simple; ramified expansions are not supported")]
    Ramified,

    #[error("insufficient series data: need order at least {needed}, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("division is not exact: {0}")]
    NotDivisible(String),
}
