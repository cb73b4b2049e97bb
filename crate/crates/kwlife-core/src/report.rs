//! Corpus-level descriptive statistics and presentation-ready series.
//!
//! Everything here aggregates what the other modules produce: per-venue
//! paper and keyword counts, the papers-and-new-keywords-per-year trend,
//! the fraction of keywords exceeding a paper-count threshold, and burst
//! timeline rows scaled for plotting.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::burst::BurstInterval;
use crate::error::{Error, Result};
use crate::normalize::AliasTable;
use crate::record::{PaperRecord, VenueClass};

/// Denominator for the keywords-per-paper mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KppDenominator {
    /// Papers listing at least one keyword.
    #[default]
    PapersWithKeywords,
    /// Every paper in the class.
    AllPapers,
}

/// Counts for one venue class (or the whole corpus).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassStats {
    pub num_papers: u32,
    pub papers_with_keywords: u32,
    /// Distinct canonical keywords appearing in the class.
    pub num_unique_keywords: u32,
    /// Mean distinct raw keywords per paper; 0 when the denominator is 0.
    pub keywords_per_paper: f64,
}

/// Descriptive statistics per venue class plus the overall row.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorpusStats {
    pub journal: ClassStats,
    pub conference: ClassStats,
    pub misc: ClassStats,
    pub all: ClassStats,
}

impl CorpusStats {
    /// Rows as `(label, stats)` in presentation order.
    pub fn rows(&self) -> [(&'static str, &ClassStats); 4] {
        [
            ("journal", &self.journal),
            ("conference", &self.conference),
            ("misc", &self.misc),
            ("all", &self.all),
        ]
    }
}

/// Yearly counts of new papers and new keywords over a contiguous span.
///
/// `new_keywords[i]` depends on the mode the series was built with; all
/// vectors align with `years`. Empty for an empty corpus.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrendSeries {
    pub years: Vec<i32>,
    pub new_papers: Vec<u32>,
    pub new_keywords: Vec<u32>,
}

/// What counts as a year's keywords in [`trend_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NewKeywordMode {
    /// Keywords whose corpus-wide first appearance falls in the year.
    #[default]
    FirstAppearance,
    /// Distinct keywords appearing in the year, new or not.
    DistinctInYear,
}

/// One plotting row of the burst timeline.
#[derive(Debug, Clone, PartialEq)]
pub struct TimelineRow {
    pub keyword: String,
    pub start_year: i32,
    pub end_year: i32,
    pub weight: f64,
    /// weight / max weight over the selected rows, in (0, 1].
    pub normalized_width: f64,
}

/// Compute per-class and overall corpus statistics.
///
/// The overall row aggregates papers additively; its unique-keyword count
/// is the corpus-wide distinct total, which can be less than the sum of
/// the class counts because a keyword may appear in several classes.
/// Keywords-per-paper averages the number of distinct raw keyword strings
/// per paper over the denominator selected by `denominator`.
pub fn descriptive_stats(
    records: &[PaperRecord],
    aliases: &AliasTable,
    denominator: KppDenominator,
) -> CorpusStats {
    struct Accum<'a> {
        papers: u32,
        with_keywords: u32,
        raw_keywords: u64,
        unique: BTreeSet<&'a str>,
    }
    let mut accums: [Accum; 4] = core::array::from_fn(|_| Accum {
        papers: 0,
        with_keywords: 0,
        raw_keywords: 0,
        unique: BTreeSet::new(),
    });

    for record in records {
        let class_idx = match record.venue() {
            VenueClass::Journal => 0,
            VenueClass::Conference => 1,
            VenueClass::Misc => 2,
        };
        let distinct_raw: BTreeSet<&str> = record.keywords.iter().map(String::as_str).collect();
        for idx in [class_idx, 3] {
            let accum = &mut accums[idx];
            accum.papers += 1;
            if record.has_keywords() {
                accum.with_keywords += 1;
            }
            accum.raw_keywords += distinct_raw.len() as u64;
            for raw in &distinct_raw {
                if let Some(key) = aliases.key_for(raw) {
                    accum.unique.insert(key);
                }
            }
        }
    }

    let finish = |accum: &Accum| {
        let denom = match denominator {
            KppDenominator::PapersWithKeywords => accum.with_keywords,
            KppDenominator::AllPapers => accum.papers,
        };
        ClassStats {
            num_papers: accum.papers,
            papers_with_keywords: accum.with_keywords,
            num_unique_keywords: accum.unique.len() as u32,
            keywords_per_paper: if denom == 0 {
                0.0
            } else {
                accum.raw_keywords as f64 / f64::from(denom)
            },
        }
    };
    CorpusStats {
        journal: finish(&accums[0]),
        conference: finish(&accums[1]),
        misc: finish(&accums[2]),
        all: finish(&accums[3]),
    }
}

/// Count new papers and new keywords per year.
///
/// The span runs from the earliest to the latest record year with zeros in
/// between; an empty corpus yields an empty series. First-appearance
/// attribution is corpus-wide, not per venue.
pub fn trend_series(
    records: &[PaperRecord],
    aliases: &AliasTable,
    mode: NewKeywordMode,
) -> TrendSeries {
    let Some(y_min) = records.iter().map(|r| r.year).min() else {
        return TrendSeries::default();
    };
    let y_max = records.iter().map(|r| r.year).max().unwrap();
    let num_years = (y_max - y_min) as usize + 1;

    let mut new_papers = alloc::vec![0u32; num_years];
    // keyword -> years seen (FirstAppearance uses only the minimum)
    let mut seen: BTreeMap<&str, BTreeSet<i32>> = BTreeMap::new();
    for record in records {
        new_papers[(record.year - y_min) as usize] += 1;
        for raw in &record.keywords {
            if let Some(key) = aliases.key_for(raw) {
                seen.entry(key).or_default().insert(record.year);
            }
        }
    }

    let mut new_keywords = alloc::vec![0u32; num_years];
    for years in seen.values() {
        match mode {
            NewKeywordMode::FirstAppearance => {
                let first = years.iter().next().unwrap();
                new_keywords[(first - y_min) as usize] += 1;
            }
            NewKeywordMode::DistinctInYear => {
                for year in years {
                    new_keywords[(year - y_min) as usize] += 1;
                }
            }
        }
    }

    TrendSeries {
        years: (y_min..=y_max).collect(),
        new_papers,
        new_keywords,
    }
}

/// Fraction of canonical keywords appearing in more than `threshold` papers.
///
/// Papers are counted corpus-wide as document frequencies. Errors when the
/// corpus has no usable keyword at all.
pub fn paper_count_survival(
    records: &[PaperRecord],
    aliases: &AliasTable,
    threshold: u32,
) -> Result<f64> {
    let mut doc_counts: BTreeMap<&str, u32> = BTreeMap::new();
    let mut per_record: BTreeSet<&str> = BTreeSet::new();
    for record in records {
        per_record.clear();
        for raw in &record.keywords {
            if let Some(key) = aliases.key_for(raw) {
                per_record.insert(key);
            }
        }
        for key in &per_record {
            *doc_counts.entry(key).or_insert(0) += 1;
        }
    }
    if doc_counts.is_empty() {
        return Err(Error::NoKeywords);
    }
    let above = doc_counts
        .values()
        .filter(|&&count| count > threshold)
        .count();
    Ok(above as f64 / doc_counts.len() as f64)
}

/// Select the heaviest bursts and scale their widths for plotting.
///
/// Takes the `top_n` heaviest intervals (ties broken by keyword, then start
/// year, matching the detector's output order) and divides each weight by
/// the maximum selected weight. When every selected weight is 0 the widths
/// are all 1. Errors on an empty list or `top_n` of 0.
pub fn render_timeline(bursts: &[BurstInterval], top_n: usize) -> Result<Vec<TimelineRow>> {
    if top_n == 0 {
        return Err(Error::InvalidTopN);
    }
    if bursts.is_empty() {
        return Err(Error::EmptyBurstList);
    }
    let mut sorted: Vec<&BurstInterval> = bursts.iter().collect();
    sorted.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.keyword.cmp(&b.keyword))
            .then_with(|| a.start_year.cmp(&b.start_year))
    });
    sorted.truncate(top_n);
    let max_weight = sorted[0].weight;
    Ok(sorted
        .into_iter()
        .map(|burst| TimelineRow {
            keyword: burst.keyword.clone(),
            start_year: burst.start_year,
            end_year: burst.end_year,
            weight: burst.weight,
            normalized_width: if max_weight == 0.0 {
                1.0
            } else {
                burst.weight / max_weight
            },
        })
        .collect())
}
