use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights ({0}, {1}, {2}) are not pairwise coprime")]
    NotPairwiseCoprime(u64, u64, u64),

    #[error("weights must be positive, got ({0}, {1}, {2})")]
    NonPositiveWeight(u64, u64, u64),

    #[error("p_K({0},{1},{2}) is a complete intersection; the triangle encoding is undefined")]
    CompleteIntersection(u64, u64, u64),

    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),

    #[error("point ({alpha}, {beta}) lies outside {degree}Δ (exponent triple {exponents:?})")]
    OutsideRegion {
        alpha: i64,
        beta: i64,
        degree: u64,
        exponents: [i64; 3],
    },

    #[error("polynomial is not weighted-homogeneous (degrees {0} and {1} both occur)")]
    NotHomogeneous(u64, u64),

    #[error("h^1 came out negative ({value}) at d={degree}, r={order}")]
    NegativeH1 { degree: u64, order: u64, value: i64 },

    #[error("degree {d0} does not exceed a+b+c = {sum}")]
    DegreeTooSmall { d0: u64, sum: u64 },

    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: u64, got: u64 },

    #[error("line {0} contains no point of the current set")]
    EmptyLine(String),

    #[error("peeling certificates are characteristic-0 statements; got characteristic {0}")]
    PositiveCharacteristic(u64),

    #[error("no negative curve with order <= {max_order}")]
    NotFound { max_order: u64 },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("no candidate (r2, d2) satisfies the divisibility constraints within r2 <= {limit}")]
    NoCandidate { limit: u64 },

    #[error("field mismatch: characteristic {0} vs {1}")]
    FieldMismatch(u64, u64),

    #[error("{context}: term {term} is not divisible by x^{exponent}")]
    NotDivisible {
        context: String,
        term: String,
        exponent: u64,
    },

    #[error("monomial ideal has infinite colength (missing a pure power of {0})")]
    InfiniteColength(char),

    #[error("{0}")]
    Parse(String),

    #[error("generator {name}: {what}")]
    GeneratorCheck { name: String, what: String },

    #[error("ideal I entry ({row},{col}): factor orders sum to {got}, expected {expected}")]
    OrderMismatch {
        row: usize,
        col: usize,
        got: u64,
        expected: u64,
    },

    #[error("ideal I entry ({row},{col}): degree {got}, table says {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        got: u64,
        expected: u64,
    },

    #[error("ideal I entry ({row},{col}): reduction mod x is {got}, table L says {expected}")]
    ModXMismatch {
        row: usize,
        col: usize,
        got: String,
        expected: String,
    },

    #[error("verification step {step} failed: {detail}")]
    StepFailed { step: String, detail: String },

    #[error("unknown {kind} '{name}' (available: {available})")]
    UnknownName {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("solver '{solver}' does not support characteristic {characteristic}")]
    UnsupportedField { solver: String, characteristic: u64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
