use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("modulus must be an odd prime >= 3, got {0}")]
    ModulusTooSmall(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (p = {left} vs p = {right})")]
    ModulusMismatch { left: u128, right: u128 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{d} does not divide p - 1 = {order}")]
    InvalidSplit { d: u128, order: u128 },
    #[error("no divisor d1 > 1 of p - 1 fits a memory budget of {budget_bits} bits")]
    NoFeasibleSplit { budget_bits: u128 },
    #[error("modulus polynomial must be monic with degree >= 1")]
    NonMonicModulus,
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("polynomial does not split into linear factors")]
    NotSplitting,
    #[error("degree {degree} must be smaller than p = {p}")]
    DegreeTooLarge { degree: usize, p: u128 },
    #[error("enumeration of {size} multisets exceeds the limit of {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("hashed keys of users {first} and {second} collide; choose another hash selector")]
    HashCollision { first: usize, second: usize },
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("p = {p} exceeds the exhaustive scan ceiling {ceiling}")]
    ScanTooLarge { p: u128, ceiling: u128 },
    #[error("p = {p} exceeds the interpolation oracle limit {limit}")]
    OracleTooLarge { p: u128, limit: u128 },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}
