//! Keyword canonicalization.
//!
//! Author keywords arrive with case, hyphenation, spacing and plural noise
//! ("Neural-Network", "NEURAL NETWORK", "neural networks"). [`normalize_keyword`]
//! folds that noise into one canonical key; [`AliasTable`] maps every raw
//! variant seen in a corpus to its key and remembers the most frequent raw
//! spelling as the display form. Nothing semantic happens here: no stemming
//! beyond the plural fold, no synonym clustering.

use alloc::borrow::Cow;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::record::PaperRecord;

/// Characters treated as hyphens and replaced by spaces.
///
/// Covers ASCII hyphen-minus plus the Unicode dash family that NFKC leaves
/// alone.
const DASHES: [char; 8] = [
    '-', '\u{2010}', '\u{2011}', '\u{2012}', '\u{2013}', '\u{2014}', '\u{2015}', '\u{2212}',
];

/// Canonicalize one raw keyword.
///
/// Pipeline, in order: NFKC compatibility normalization, lowercasing, hyphen
/// to space replacement, whitespace run collapsing with trimming, then a
/// single plural fold that strips one trailing `s` from the final token when
/// the remaining stem keeps at least four characters and the token does not
/// end in `ss`. So `"networks"` becomes `"network"` while `"bias"`, `"gps"`
/// and `"class"` stay untouched. The result is a fixed point:
/// `normalize_keyword(key) == Ok(key)` for every key this function returns.
///
/// Errors with [`Error::EmptyKeyword`] when the input is empty after trimming
/// or reduces to nothing (e.g. `"-"`).
pub fn normalize_keyword(raw: &str) -> Result<String> {
    if raw.trim().is_empty() {
        return Err(Error::EmptyKeyword);
    }
    let folded: String = raw
        .nfkc()
        .flat_map(char::to_lowercase)
        .map(|c| if DASHES.contains(&c) { ' ' } else { c })
        .collect();
    let mut tokens: Vec<&str> = folded.split_whitespace().collect();
    if let Some(last) = tokens.last_mut() {
        if let Some(stem) = plural_stem(last) {
            *last = stem;
        }
    }
    let key = tokens.join(" ");
    if key.is_empty() {
        return Err(Error::EmptyKeyword);
    }
    Ok(key)
}

/// Stem of a plural token, or `None` when the token is left as-is.
fn plural_stem(token: &str) -> Option<&str> {
    let stem = token.strip_suffix('s')?;
    if stem.ends_with('s') || stem.chars().count() < 4 {
        return None;
    }
    Some(stem)
}

/// A canonical keyword: the matching key plus a human-facing display form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalKeyword {
    /// Normalized matching key; a fixed point of [`normalize_keyword`].
    pub key: String,
    /// Most frequent raw variant observed for this key.
    pub display: String,
}

/// One row of the alias table, borrowing from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AliasRow<'a> {
    pub raw: &'a str,
    pub key: &'a str,
    pub display: &'a str,
    /// Number of records listing this raw variant.
    pub count: u32,
}

/// Mapping from every raw keyword variant in a corpus to its canonical form.
///
/// Built once over a record set; immutable afterwards. Raw variants that
/// normalize to nothing (pure punctuation) are skipped.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    /// raw -> (key, records listing the raw variant)
    raw_to_key: BTreeMap<String, (String, u32)>,
    /// key -> display variant
    display: BTreeMap<String, String>,
}

impl AliasTable {
    /// Build the table from a record set.
    ///
    /// Variant counts are document frequencies: a record listing the same raw
    /// string twice counts once. The display form of a key is its
    /// highest-frequency raw variant, ties broken toward the
    /// lexicographically smallest.
    pub fn build(records: &[PaperRecord]) -> AliasTable {
        let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
        for record in records {
            let distinct: BTreeSet<&str> = record.keywords.iter().map(String::as_str).collect();
            for raw in distinct {
                *counts.entry(raw).or_insert(0) += 1;
            }
        }

        let mut raw_to_key = BTreeMap::new();
        // key -> (count, raw) of the best display candidate so far
        let mut best: BTreeMap<String, (u32, &str)> = BTreeMap::new();
        for (&raw, &count) in &counts {
            let Ok(key) = normalize_keyword(raw) else {
                continue;
            };
            match best.get_mut(key.as_str()) {
                Some(entry) => {
                    if count > entry.0 || (count == entry.0 && raw < entry.1) {
                        *entry = (count, raw);
                    }
                }
                None => {
                    best.insert(key.clone(), (count, raw));
                }
            }
            raw_to_key.insert(raw.to_string(), (key, count));
        }
        let display = best
            .into_iter()
            .map(|(key, (_, raw))| (key, raw.to_string()))
            .collect();
        AliasTable {
            raw_to_key,
            display,
        }
    }

    /// Canonical key for a raw variant seen at build time.
    pub fn key_for(&self, raw: &str) -> Option<&str> {
        self.raw_to_key.get(raw).map(|(key, _)| key.as_str())
    }

    /// Display form for a canonical key.
    pub fn display_for(&self, key: &str) -> Option<&str> {
        self.display.get(key).map(String::as_str)
    }

    /// Canonical keyword (key + display) for a raw variant.
    pub fn canonical(&self, raw: &str) -> Option<CanonicalKeyword> {
        let (key, _) = self.raw_to_key.get(raw)?;
        Some(CanonicalKeyword {
            key: key.clone(),
            display: self.display[key].clone(),
        })
    }

    /// Canonical key for any raw string: table lookup with a fallback to
    /// fresh normalization for strings not seen at build time. `None` when
    /// the string normalizes to nothing.
    pub fn resolve<'a>(&'a self, raw: &str) -> Option<Cow<'a, str>> {
        match self.raw_to_key.get(raw) {
            Some((key, _)) => Some(Cow::Borrowed(key.as_str())),
            None => normalize_keyword(raw).ok().map(Cow::Owned),
        }
    }

    /// Distinct raw variants in the table.
    pub fn len(&self) -> usize {
        self.raw_to_key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw_to_key.is_empty()
    }

    /// All canonical keys, ascending.
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.display.keys().map(String::as_str)
    }

    /// Export rows `(raw, key, display, count)`, ascending by raw variant.
    pub fn rows(&self) -> impl Iterator<Item = AliasRow<'_>> {
        self.raw_to_key.iter().map(|(raw, (key, count))| AliasRow {
            raw,
            key,
            display: &self.display[key],
            count: *count,
        })
    }
}
