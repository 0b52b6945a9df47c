use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}; expected [-]digits[/digits]")]
    ParseRational(String),

    #[error("operands live in different quadratic extensions (sqrt({left}) vs sqrt({right}))")]
    ContextMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero has no squarefree part")]
    ZeroSquarefree,

    #[error(
        "integer {0} has a cofactor beyond the trial-division bound that could not be classified"
    )]
    FactorizationBound(String),

    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,

    #[error("p = {0} must be an odd integer >= 3")]
    InvalidDegree(i64),

    #[error("d = 0; the reduction requires d != 0")]
    ZeroD,

    #[error("R = 0; the reduction requires R != 0")]
    ZeroR,

    #[error("D = d^2 - R = 0; the reduction requires D != 0")]
    ZeroDiscriminant,

    #[error("sqrt(R) is rational (R = {0}); the reduction requires sqrt(R) to be irrational")]
    RationalSqrtR(String),

    #[error("Euclid's formulas take positive d and R (got d = {d}, R = {r})")]
    NonPositiveEuclid { d: String, r: String },

    #[error("index {index} outside the range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("even root of the negative value {0} has no real value")]
    EvenRootOfNegative(String),

    #[error("evaluations at {low} and {high} bits disagree beyond tolerance")]
    PrecisionDisagreement { low: u32, high: u32 },

    #[error("numeric evaluation failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
