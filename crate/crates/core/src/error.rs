use crate::pattern::LevelPattern;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid level pattern: {0}")]
    InvalidPattern(String),

    #[error("voter count mismatch: {top} voters above, {bottom} below")]
    VoterCountMismatch { top: usize, bottom: usize },

    #[error("parity error: {0}")]
    Parity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pattern {0} has an odd level; no power-of-two decomposition")]
    OddLevelPresent(LevelPattern),

    /// A builder produced a profile whose pattern differs from the target.
    #[error("construction of {target} failed self-verification: produced {produced}")]
    Construction {
        target: LevelPattern,
        produced: LevelPattern,
    },

    #[error("pattern {0} has no appendix fixture")]
    NotInTable(LevelPattern),

    #[error("pattern {0} is not a {{2,4}}-pattern with an even number (>= 2) of 2s")]
    NotDecomposable(LevelPattern),

    #[error("pattern {0} is not in the Borda range for any odd n")]
    NotInRange(LevelPattern),

    #[error("no construction available for {pattern} ({reason})")]
    UnsupportedConstruction {
        pattern: LevelPattern,
        reason: String,
    },

    #[error("budget exceeded: {needed} candidates, limit {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },

    #[error("no witness found for {pattern} at n={n} (exhaustive: {exhaustive})")]
    NotFound {
        pattern: LevelPattern,
        n: usize,
        exhaustive: bool,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
