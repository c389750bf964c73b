use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial division is not exact")]
    DivisionNotExact,
    #[error("division by zero")]
    DivisionByZero,
    #[error("common denominator does not cancel: factor {factor} survives")]
    DenominatorSurvives { factor: String },
    #[error("not symmetric under exchange of roots {0} and {1}")]
    NotSymmetric(u32, u32),
}
