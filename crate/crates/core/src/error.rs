use thiserror::Error;

/// Errors reported by constructors and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("distribution must have at least one entry")]
    EmptyDistribution,

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}; allowed deviation from 1 is {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("index {index} out of range ({len} entries)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("total measure must be positive and finite, got {total}")]
    ZeroTotalMeasure { total: f64 },

    #[error("{what}: expected length {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("value labels must be distinct")]
    DuplicateValueLabel,

    #[error("assignment refers to value index {index}, but there are {len} values")]
    BadValueIndex { index: usize, len: usize },

    #[error("negative or non-finite weight {value} at domain index {index}")]
    BadWeight { index: usize, value: f64 },

    #[error("functions must share one domain (sizes {left} vs {right}, identical weights)")]
    MismatchedDomains { left: usize, right: usize },

    #[error("need at least two samples")]
    TooFewSamples,

    #[error("sample grid must be strictly increasing at index {index}")]
    NonIncreasingGrid { index: usize },

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("level {level} would spread the data over up to {bins} bins, but only {samples} samples are available")]
    LevelTooFine { level: u32, bins: u64, samples: usize },

    #[error("joint matrix must be rectangular and non-empty")]
    BadMatrix,

    #[error("zero marginal probability for {axis} index {index}; pointwise mutual information is undefined")]
    ZeroMarginal { axis: &'static str, index: usize },

    #[error("event {index} has zero probability")]
    ZeroProbabilityEvent { index: usize },

    #[error("pointwise mutual information {value} is not positive; the query conveys nothing about this outcome pair")]
    NonpositivePmi { value: f64 },

    #[error("post-processing map does not cover value index {index}")]
    IncompleteMap { index: usize },

    #[error("h does not factor through g: domain points {first} and {second} share g's value but disagree on h")]
    DoesNotFactor { first: usize, second: usize },

    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("exhaustive enumeration is limited to {limit} variables, got {n}")]
    EnumerationLimit { n: u32, limit: u32 },

    #[error("DIMACS parse error at line {line}: {message}")]
    Dimacs { line: usize, message: String },

    #[error("literal {literal} references a variable outside 1..={n}")]
    BadLiteral { literal: i64, n: u32 },

    #[error("clause {index} is empty")]
    EmptyClause { index: usize },

    #[error("subset-sum weight at index {index} must be a nonzero integer")]
    ZeroWeight { index: usize },

    #[error("subset-sum weights too large: total magnitude {magnitude} exceeds the supported range")]
    WeightOverflow { magnitude: u128 },

    #[error("{value} is not an odd prime")]
    NotOddPrime { value: u64 },

    #[error("prime factors must be distinct, got {value} twice")]
    EqualPrimes { value: u64 },

    #[error("base {base} has multiplicative order {order} modulo {modulus}; a primitive root is required")]
    NotPrimitiveRoot { base: u64, modulus: u64, order: u64 },

    #[error("exponent {exponent} shares the factor gcd = {gcd} with phi = {phi}")]
    ExponentNotCoprime { exponent: u64, phi: u64, gcd: u64 },

    #[error("channel kind {found} where {expected} is required")]
    WrongChannelKind {
        found: &'static str,
        expected: &'static str,
    },

    #[error("no sign change over the sampled interval")]
    NoSignChange,

    #[error("majority vote needs an odd number of repetitions, got {0}")]
    EvenRepetitions(u32),

    #[error("csv parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
