use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("digit {digit} out of range for base {base}")]
    InvalidDigit { digit: u32, base: u32 },
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("fraction {numerator}/{denominator} is not a base-{base} rational in [0,1)")]
    NotRepresentable {
        numerator: u128,
        denominator: u128,
        base: u32,
    },
    #[error("exact arithmetic overflow")]
    Overflow,
    #[error("enumeration of {requested} index vectors exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },
    #[error("resolution components must be ≥ 1")]
    ZeroResolution,
    #[error("index k must be positive")]
    ZeroIndex,
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("index {n} out of range for precision {m} in base {base}")]
    IndexOutOfRange { n: u64, m: usize, base: u32 },
    #[error("oracle cap exceeded: {0}")]
    CapExceeded(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
