use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("dimension n = {0} is below 2")]
    DimensionTooSmall(i64),
    #[error("expected {expected} weights, got {found}")]
    WrongWeightCount { expected: usize, found: usize },
    #[error("weights are not strictly increasing at position {0}")]
    WeightsNotStrictlyIncreasing(usize),
    #[error("weight {weight} lies outside [0, {p})")]
    WeightOutOfRange { weight: i64, p: i64 },
    #[error("p = {p} is smaller than n + 2 = {bound}")]
    PTooSmall { p: i64, bound: i64 },
    #[error("operation is only defined for the fundamental configuration")]
    NotFundamentalCase,
    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("variable weights are not pairwise distinct mod p (weight {0} repeats)")]
    DuplicateWeight(u32),
    #[error("{count} candidate monomials exceed the enumeration cap {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("section count does not fit in 128 bits")]
    CountOverflow,
    #[error("support set is empty")]
    EmptySupport,
    #[error("{count} variables exceed the support-scan limit of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("expected a system of degree {expected}, found degree {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("({a}, {b}) is not a valid distinguished point")]
    InvalidPoint { a: usize, b: usize },
    #[error("integer overflow during fraction-free elimination")]
    OverflowDetected,
    #[error("sign convention could not be decided for n = {n}, p = {p}: no sample separates the two signs")]
    Inconclusive { n: u32, p: u32 },
    #[error("sign convention evidence for n = {n}, p = {p} is contradictory")]
    ConflictingEvidence { n: u32, p: u32 },
    #[error("sign resolution needs p > n + 2 (got n = {n}, p = {p})")]
    RestrictionTrivial { n: u32, p: u32 },
    #[error("{count} weight tuples exceed the search cap {cap}")]
    SearchTooLarge { count: u128, cap: u64 },
}
