use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring configuration: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    MismatchedRing,
    #[error("derivation index {index} out of range (ring has {n} derivations)")]
    DerivationOutOfRange { index: usize, n: usize },
    #[error("polynomial is constant (no differential unknown occurs)")]
    ConstantPolynomial,
    #[error("operation requires characteristic zero coefficients")]
    UnsupportedCharacteristic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("target element is zero")]
    ZeroTarget,
    #[error("specialization undefined on `{0}`")]
    SpecializationDomain(String),
    #[error("empty input")]
    EmptyInput,
    #[error("input is zero or a unit")]
    UnitOrZeroInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an autoreduced set: {0}")]
    NotAutoreduced(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("derivation d{index} out of range at line {line}, column {column} (ring has {n} derivations)")]
    DerivationIndexOutOfRange {
        index: usize,
        n: usize,
        line: usize,
        column: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
