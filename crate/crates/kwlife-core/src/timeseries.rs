//! Yearly keyword count matrix.
//!
//! Turns a record set into per-year document counts: for each canonical
//! keyword, the number of papers listing it in each year, together with the
//! yearly paper totals those counts are measured against. This is the input
//! shape burst detection works on.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::normalize::AliasTable;
use crate::record::PaperRecord;

/// Which papers count toward the yearly totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TotalsMode {
    /// Only papers listing at least one keyword. Keeps keyword rates
    /// comparable across years with different indexing coverage.
    #[default]
    KeywordBearing,
    /// Every paper in the year, keywords or not.
    AllPapers,
}

/// Per-year document counts for a set of keywords over a contiguous year span.
///
/// Row values are document frequencies: a paper listing a keyword twice (or
/// under two raw variants with the same canonical form) counts once.
#[derive(Debug, Clone, PartialEq)]
pub struct KeywordMatrix {
    y_min: i32,
    totals: Vec<u32>,
    counts: BTreeMap<String, Vec<u32>>,
}

impl KeywordMatrix {
    /// First year of the span.
    pub fn min_year(&self) -> i32 {
        self.y_min
    }

    /// Last year of the span.
    pub fn max_year(&self) -> i32 {
        self.y_min + self.totals.len() as i32 - 1
    }

    /// Years of the span, ascending.
    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.totals.len() as i32).map(move |k| self.y_min + k)
    }

    /// Number of years in the span.
    pub fn num_years(&self) -> usize {
        self.totals.len()
    }

    /// Number of keyword rows.
    pub fn num_keywords(&self) -> usize {
        self.counts.len()
    }

    /// Yearly paper totals, aligned with [`KeywordMatrix::years`].
    pub fn totals(&self) -> &[u32] {
        &self.totals
    }

    /// Canonical keywords with a row, ascending.
    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    /// Aligned `(counts, totals)` series for one keyword, both indexed like
    /// [`KeywordMatrix::years`].
    ///
    /// Errors with [`Error::UnknownKeyword`] for keywords without a row.
    pub fn keyword_series(&self, keyword: &str) -> Result<(&[u32], &[u32])> {
        match self.counts.get(keyword) {
            Some(series) => Ok((series.as_slice(), self.totals.as_slice())),
            None => Err(Error::UnknownKeyword(keyword.to_string())),
        }
    }

    /// Rows as `(keyword, counts)`, ascending by keyword.
    pub fn rows(&self) -> impl Iterator<Item = (&str, &[u32])> {
        self.counts.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Assemble a matrix from raw parts, e.g. when importing a file.
    ///
    /// `totals` must be non-empty and every row needs one count per year,
    /// nowhere exceeding the year's total. Minimum-support thresholds are a
    /// build-time concern and are not re-checked here.
    pub fn from_parts(
        y_min: i32,
        totals: Vec<u32>,
        rows: impl IntoIterator<Item = (String, Vec<u32>)>,
    ) -> Result<KeywordMatrix> {
        if totals.is_empty() {
            return Err(Error::EmptySeries);
        }
        let mut counts: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        for (keyword, series) in rows {
            if keyword.is_empty() {
                return Err(Error::EmptyKeyword);
            }
            if series.len() != totals.len() {
                return Err(Error::LengthMismatch {
                    left: series.len(),
                    right: totals.len(),
                });
            }
            if let Some((&count, &total)) = series.iter().zip(&totals).find(|&(r, d)| r > d) {
                return Err(Error::CountExceedsTotal { count, total });
            }
            if counts.contains_key(&keyword) {
                return Err(Error::DuplicateKeyword(keyword));
            }
            counts.insert(keyword, series);
        }
        Ok(KeywordMatrix {
            y_min,
            totals,
            counts,
        })
    }
}

/// Count papers per canonical keyword per year.
///
/// The year span runs from the earliest to the latest record year; years with
/// no records in between get zero totals. Keywords are canonicalized through
/// `aliases` and rows are kept only for keywords appearing in at least
/// `min_papers` records over the whole span. An empty matrix (zero rows) is a
/// valid outcome when every keyword falls below the threshold.
///
/// Errors with [`Error::NoKeywords`] when no record lists a usable keyword,
/// and [`Error::InvalidMinPapers`] when `min_papers` is zero.
pub fn build_matrix(
    records: &[PaperRecord],
    aliases: &AliasTable,
    min_papers: u32,
    totals_mode: TotalsMode,
) -> Result<KeywordMatrix> {
    if min_papers == 0 {
        return Err(Error::InvalidMinPapers);
    }

    let mut span: Option<(i32, i32)> = None;
    for record in records {
        span = Some(match span {
            None => (record.year, record.year),
            Some((lo, hi)) => (lo.min(record.year), hi.max(record.year)),
        });
    }
    let Some((y_min, y_max)) = span else {
        return Err(Error::NoKeywords);
    };
    let num_years = (y_max - y_min) as usize + 1;

    let mut totals = vec![0u32; num_years];
    let mut counts: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    let mut any_keyword = false;
    let mut per_record: Vec<&str> = Vec::new();
    for record in records {
        let t = (record.year - y_min) as usize;
        per_record.clear();
        for raw in &record.keywords {
            if let Some(key) = aliases.key_for(raw) {
                per_record.push(key);
            }
        }
        per_record.sort_unstable();
        per_record.dedup();
        if !per_record.is_empty() {
            any_keyword = true;
        }
        let counts_toward_total = match totals_mode {
            TotalsMode::KeywordBearing => !per_record.is_empty(),
            TotalsMode::AllPapers => true,
        };
        if counts_toward_total {
            totals[t] += 1;
        }
        for key in &per_record {
            counts
                .entry((*key).to_string())
                .or_insert_with(|| vec![0; num_years])[t] += 1;
        }
    }
    if !any_keyword {
        return Err(Error::NoKeywords);
    }

    counts.retain(|_, series| series.iter().sum::<u32>() >= min_papers);

    Ok(KeywordMatrix {
        y_min,
        totals,
        counts,
    })
}
