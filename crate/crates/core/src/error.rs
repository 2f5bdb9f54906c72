//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by field arithmetic, matrix constructions, code analysis,
/// bound evaluation, and the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),

    #[error("GF({0}) has even characteristic; the quadratic character needs odd order")]
    EvenCharacteristic(u64),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),

    #[error("elements belong to different fields: GF({0}) vs GF({1})")]
    FieldMismatch(u64, u64),

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("not a weighing matrix of weight {weight}: gram[{row_a}][{row_b}] = {value}")]
    NotWeighing {
        weight: i64,
        row_a: usize,
        row_b: usize,
        value: i64,
    },

    #[error("first column has no nonzero entry")]
    NoPivotColumn,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("duplicate codeword at rows {0} and {1}")]
    DuplicateRow(usize, usize),

    #[error("row {0} is all zero")]
    ZeroRow(usize),

    #[error("not a balanced weighing matrix")]
    NotBalanced,

    #[error("lambda = k(k-1)/(v-1) is not an integer for (v,k) = ({v},{k})")]
    NonIntegerLambda { v: u64, k: u64 },

    #[error("constant distance is not an integer for (v,k) = ({v},{k})")]
    NonIntegerDistance { v: u64, k: u64 },

    #[error("precondition violated: {0}")]
    ConditionViolated(String),

    #[error("closed-form bound mismatch for {context}: expected {expected}, evaluated {got}")]
    BoundAssertion {
        context: String,
        expected: u64,
        got: u64,
    },

    #[error("size cap exceeded: {entries} entries > cap {cap}")]
    SizeCapExceeded { entries: u64, cap: u64 },

    #[error("self-check failed: {0}")]
    PropertyCheck(String),

    #[error("invalid ternary entry {0}: entries must be -1, 0, or 1")]
    InvalidEntry(i64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
