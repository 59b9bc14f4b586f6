use thiserror::Error;

/// Errors raised by field arithmetic, code constructions and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus is reducible over F_{q}")]
    ReducibleModulus { q: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field F_{q}^{n} is too large for this library")]
    FieldTooLarge { q: u32, n: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{k} does not divide the extension degree {n}")]
    NonDivisorDegree { k: usize, n: usize },
    #[error("destination degree {dst} is smaller than source degree {src}")]
    DimensionTooSmall { src: usize, dst: usize },
    #[error("field contexts do not match")]
    FieldMismatch,
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("enumeration of {what} too large ({size} > {limit})")]
    EnumerationTooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("search too large: {pairs} pairs exceed the limit {limit}; pass force to override")]
    SearchTooLarge { pairs: u128, limit: u128 },
    #[error("need at least two codewords, found {0}")]
    TooFewCodewords(usize),
    #[error("duplicate codeword at index {0}")]
    DuplicateCodeword(usize),
    #[error("code is not linear: {0}")]
    NotLinear(String),
    #[error("rate too low: k = {k} is not greater than n/2 with n = {n}")]
    RateTooLow { n: usize, k: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("q = {0} must be even")]
    ParityViolation(u32),
    #[error("{k} does not divide {n}")]
    DivisibilityViolation { k: usize, n: usize },
    #[error("no object found: {0}")]
    NotFound(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("length {l} is shorter than the largest member dimension {dim}")]
    LengthTooShort { l: usize, dim: usize },
    #[error("length {l} outside the admissible range {range}")]
    LengthOutOfRange { l: usize, range: String },
    #[error("parameter too small: {0}")]
    ParameterTooSmall(String),
    #[error("internal property violation: {0}")]
    PropertyViolation(String),
    #[error("set is empty")]
    EmptySet,
    #[error("generalized Hamming weights are not strictly increasing")]
    NonMonotoneInput,
    #[error("cannot delete {deletions} symbols from a word of length {len}")]
    TooManyDeletions { deletions: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
