use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("divisor enumeration needs {needed} divisors, budget is {budget}")]
    DivisorBudgetExceeded { needed: u128, budget: usize },
    #[error("degenerate equation 0 = 0: every element is a solution")]
    IdentityEquation,
    #[error("algebra is not a division algebra: {0}")]
    NotDivision(String),
    #[error("algebra fails the division preflight: {0}")]
    SplitAlgebra(String),
    #[error("element is not Artin-Schreier")]
    NotArtinSchreier,
    #[error("element is not square-central")]
    NotSquareCentral,
    #[error("element is central")]
    CentralElement,
    #[error("basis elements are linearly dependent")]
    DegenerateBasis,
    #[error("unsupported form shape: {0}")]
    UnsupportedFormShape(String),
    #[error("enumeration box with degree bound {0} is too large")]
    BoxTooLarge(u32),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
