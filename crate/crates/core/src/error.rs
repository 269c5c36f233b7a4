use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero ideal unsupported")]
    ZeroIdeal,
    #[error("singular curve")]
    SingularCurve,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("valuation overflow: all jets vanish up to order {cutoff}")]
    ValuationOverflow { cutoff: usize },
    #[error("non-rational support")]
    NonRationalSupport,
    #[error("S-pair budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },
    #[error("computation cancelled")]
    Cancelled,
    #[error("order bound exceeded at {bound} (partial ideal has {} generators)", partial.len())]
    OrderBoundExceeded { bound: usize, partial: Vec<String> },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("ideal is not fat")]
    NotFat,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
