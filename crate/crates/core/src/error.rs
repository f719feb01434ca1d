use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible over GF({1})")]
    NotIrreducible(Vec<u32>, u32),
    #[error("modulus degree {found} does not match extension degree {expected}")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("field or component of order {0} is too large for this operation")]
    FieldTooLarge(u128),
    #[error("h = {h} is out of range 0 <= h < {ell}")]
    HOutOfRange { h: u32, ell: u32 },
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("lambda^(1+p^{h}) != 1, the * operator is undefined")]
    LambdaHypothesisViolated { h: u32 },
    #[error("word length {found} does not match code length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0} codewords exceed the exhaustive budget")]
    TooLargeForExhaustive(u128),
    #[error("delta = {0} is outside [0, 1 - 1/q]")]
    DeltaOutOfRange(String),
    #[error("gcd(n, q) != 1 (n = {n}, q = {q})")]
    NotSemisimple { n: usize, q: u64 },
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("gcd(n, t) != 1 (n = {n}, t = {t})")]
    NotCoprime { n: usize, t: u64 },
    #[error("span is not closed under the lambda-constacyclic shift")]
    NotClosed,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
