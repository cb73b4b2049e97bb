use alloc::string::String;

use thiserror::Error;

use crate::record::VenueClass;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors surfaced by the analysis operations.
///
/// Degenerate-but-recoverable situations (all-zero series, saturated rates,
/// zero log-rank variance) are *not* errors; they are flagged on the result
/// types instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inverted year range: min {min} > max {max}")]
    InvertedYearRange { min: i32, max: i32 },

    #[error("keyword is empty after normalization")]
    EmptyKeyword,

    #[error("no records with keywords in the corpus")]
    NoKeywords,

    #[error("unknown keyword: {0}")]
    UnknownKeyword(String),

    #[error("duplicate keyword row: {0}")]
    DuplicateKeyword(String),

    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series is empty")]
    EmptySeries,

    #[error("keyword count {count} exceeds document total {total}")]
    CountExceedsTotal { count: u32, total: u32 },

    #[error("probability {0} outside the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error("invalid burst parameters: s = {s} (need > 1), gamma = {gamma} (need >= 0)")]
    InvalidBurstParams { s: f64, gamma: f64 },

    #[error("minimum paper threshold must be at least 1")]
    InvalidMinPapers,

    #[error("no survival samples for group {0:?}")]
    EmptyGroup(VenueClass),

    #[error("no samples to estimate a survival curve from")]
    EmptySamples,

    #[error("log-rank test requires at least one observed death")]
    NoEvents,

    #[error("invalid introduction window [{start}, {end}] with horizon {horizon}")]
    InvalidIntroWindow { start: i32, end: i32, horizon: i32 },

    #[error("death gap must be at least 1 year")]
    InvalidGap,

    #[error("chi-square statistic {0} is negative")]
    NegativeStatistic(f64),

    #[error("degrees of freedom must be at least 1")]
    InvalidDegreesOfFreedom,

    #[error("no bursts to lay out")]
    EmptyBurstList,

    #[error("top-n must be at least 1")]
    InvalidTopN,
}
