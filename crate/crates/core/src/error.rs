use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos} (ambient dimension {nvars})")]
    UnknownVariable {
        name: String,
        pos: usize,
        nvars: usize,
    },

    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} substitution arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("variable index {index} out of range for dimension {nvars}")]
    VariableIndex { index: usize, nvars: usize },

    #[error("the Poisson bracket needs at least two variables, got {0}")]
    TooFewVariables(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound coefficient {0} is not positive, the degree argument does not apply")]
    NonPositiveCoefficient(i64),

    #[error("degree triple must be sorted ascending, got {0:?}")]
    Unsorted(Vec<u64>),

    #[error("degrees must be positive, got {0:?}")]
    NonPositiveDegree(Vec<u64>),

    #[error("elementary automorphism needs a nonzero scalar")]
    ZeroScalar,

    #[error("shift polynomial involves the replaced variable x{0}")]
    ShiftInvolvesVariable(usize),

    #[error("position {position} out of range 1..={n}")]
    Position { position: usize, n: usize },
}
