use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("rank {rank} exceeds the configured maximum {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("invalid generator `{0}`")]
    InvalidGenerator(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid signed composition: {0}")]
    InvalidComposition(String),

    #[error("element is not a member of W_{0}")]
    NotAMember(String),

    #[error("{0} is not contained in {1}")]
    NotContained(String, String),

    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),

    #[error("subgroup of order {0} is too large to enumerate")]
    SubgroupTooLarge(u128),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("singular matrix")]
    Singular,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Bail out with [`Error::Invariant`] unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
