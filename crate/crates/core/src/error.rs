use thiserror::Error;

/// Errors raised across the library.
///
/// Validation failures carry the name of the violated hypothesis of the
/// theorem statement (`ha_pos`, `ha_inj`, `hM_card`, `hS`) in their message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ha_pos violated: jump at index {index} is {value}, jumps must be positive")]
    NonPositiveJump { index: usize, value: u64 },

    #[error("ha_inj violated: jump value {value} appears at indices {first} and {second}")]
    DuplicateJump {
        value: u64,
        first: usize,
        second: usize,
    },

    #[error("hM_card violated: |M| = {forbidden} but {mode} mode with n = {n} requires {requirement}")]
    CardinalityViolation {
        n: usize,
        forbidden: usize,
        mode: &'static str,
        requirement: String,
    },

    #[error("hS violated: total jump sum {total} is a member of the forbidden set")]
    TotalSumForbidden { total: u64 },

    #[error("total jump sum overflows 64-bit arithmetic")]
    SumOverflow,

    #[error("ordering is not a permutation of 0..{n}: {reason}")]
    NotABijection { n: usize, reason: String },

    #[error("permutation has {got} entries but the instance has {expected} jumps")]
    IndexRangeMismatch { expected: usize, got: usize },

    #[error("operation requires at least one jump (n = 0)")]
    EmptyInstance,

    #[error("swap position {position} out of range: need 1 <= k <= {max}")]
    PositionOutOfRange { position: usize, max: usize },

    #[error("n = {n} exceeds the exhaustive bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("no safe ordering found: best ordering {best:?} is unsafe at positions {unsafe_positions:?}")]
    Unsolved {
        best: Vec<usize>,
        unsafe_positions: Vec<usize>,
    },

    #[error("permutation {order:?} carries no exact G-maximality certificate")]
    NotMaximal { order: Vec<usize> },

    #[error("infeasible generator config: {0}")]
    InfeasibleConfig(String),

    #[error("estimated instance count {estimated} exceeds the cap {cap}")]
    BudgetExceeded { estimated: u128, cap: u128 },
}

impl Error {
    /// Name of the violated theorem hypothesis, for validation errors.
    pub fn hypothesis(&self) -> Option<&'static str> {
        match self {
            Error::NonPositiveJump { .. } => Some("ha_pos"),
            Error::DuplicateJump { .. } => Some("ha_inj"),
            Error::CardinalityViolation { .. } => Some("hM_card"),
            Error::TotalSumForbidden { .. } => Some("hS"),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
