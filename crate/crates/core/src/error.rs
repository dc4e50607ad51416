use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operands live in different prime fields (p = {left} and p = {right})")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("coefficient denominator {den} is divisible by p = {p}")]
    DenominatorDivisibleByP { den: String, p: u64 },

    #[error("{p} and {n} are not coprime")]
    NotCoprime { p: u64, n: u64 },

    #[error("similarity map requires a != 0")]
    DegenerateSimilarity,

    #[error("b = {0} is outside the supported special values")]
    UnsupportedParameter(String),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("expected a polynomial of degree {expected}, got degree {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },

    #[error("enumeration of {size} candidates exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("coefficient {0} is not an integer")]
    NotIntegral(String),
}
