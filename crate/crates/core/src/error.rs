use thiserror::Error;

/// Errors raised anywhere in the core pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidFieldSpec(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("operands belong to different extensions")]
    ExtensionMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("coefficient `{0}` is not reducible into the residue field")]
    BadCoefficient(String),

    #[error("operation requires an exact (finitely supported) series")]
    InexactSeries,

    #[error(
        "representative reduces to an integral class (v >= 0 after Artin-Schreier reduction); \
         it does not define a wildly ramified extension"
    )]
    ReducesToIntegral,

    #[error("ramification break mismatch: i(sigma_{j}) = {found}, expected {expected}")]
    BreakMismatch { j: u32, found: String, expected: i64 },

    #[error("invalid ramification data: {0}")]
    InvalidRamificationData(String),

    #[error("invalid piecewise-linear function: {0}")]
    InvalidPlFunction(String),

    #[error("argument {0} is negative; only u >= 0 is supported")]
    NegativeArgument(String),

    #[error("rational arithmetic overflow")]
    Overflow,

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("enumeration cap exceeded: q^(N-1) = {size} > {cap}")]
    CapExceeded { size: u128, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element is not a principal unit (v_L(x - 1) < 1)")]
    NotPrincipalUnit,

    #[error("verification failed at {context}: {reason}")]
    VerificationFailure { context: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
