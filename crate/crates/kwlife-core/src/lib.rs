//! Keyword lifecycle analytics over bibliographic corpora.
//!
//! The crate takes a set of [`PaperRecord`]s (one per paper: id, year, venue
//! descriptor, author keywords) and answers two questions about the keywords:
//!
//! * **When did a keyword burst?** A two-state rate automaton is fitted to the
//!   keyword's yearly document counts by dynamic programming; maximal elevated
//!   intervals come out as weighted [`BurstInterval`]s ([`burst`]).
//! * **How long do new keywords live?** Keywords first seen inside an
//!   introduction window become right-censored lifespan samples per venue
//!   group, compared with Kaplan-Meier curves and the log-rank test
//!   ([`survival`]).
//!
//! Supporting modules canonicalize raw keyword variants ([`normalize`]), build
//! the year-by-keyword count matrix ([`timeseries`]) and compute corpus-level
//! descriptive statistics ([`report`]).
//!
//! The crate is `no_std` (with `alloc`); file formats, I/O and the command
//! line front end live in the companion `kwlife-cli` crate. All operations are
//! deterministic: identical inputs produce identical outputs, bit for bit.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod burst;
mod error;
pub mod normalize;
pub mod record;
pub mod report;
pub mod survival;
pub mod timeseries;

pub use burst::{
    detect_bursts, enumerate_bursts, optimal_state_sequence, state_costs, transition_cost,
    BurstInterval, BurstParams, Degeneracy, StateSequence,
};
pub use error::{Error, Result};
pub use normalize::{normalize_keyword, AliasRow, AliasTable, CanonicalKeyword};
pub use record::{classify_venue, filter_years, PaperRecord, VenueClass};
pub use report::{
    descriptive_stats, paper_count_survival, render_timeline, trend_series, ClassStats,
    CorpusStats, KppDenominator, NewKeywordMode, TimelineRow, TrendSeries,
};
pub use survival::{
    build_survival_samples, chi_sq_p_value, km_estimate, log_rank_test, survival_fraction_at,
    KMCurve, LogRankGroup, LogRankResult, SurvivalConfig, SurvivalSample,
};
pub use timeseries::{build_matrix, KeywordMatrix, TotalsMode};
