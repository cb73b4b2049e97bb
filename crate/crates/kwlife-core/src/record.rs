//! Bibliographic records and venue classification.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One bibliographic item as ingested from a corpus file.
///
/// Parsers guarantee a non-empty `id` (unique within a corpus), a positive
/// `year` and a keyword list free of empty strings. The keyword strings are
/// kept raw; canonicalization happens in [`crate::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub id: String,
    pub year: i32,
    /// Raw venue descriptor, e.g. `"Article; Article"`.
    pub doc_type: String,
    /// Raw author keywords in input order, possibly empty.
    pub keywords: Vec<String>,
}

impl PaperRecord {
    /// Venue class of this record, derived from `doc_type`.
    pub fn venue(&self) -> VenueClass {
        classify_venue(&self.doc_type)
    }

    /// Whether the record carries at least one keyword.
    pub fn has_keywords(&self) -> bool {
        !self.keywords.is_empty()
    }
}

/// Three-way publication venue split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VenueClass {
    Journal,
    Conference,
    Misc,
}

impl VenueClass {
    /// Lowercase label used in file names and report output.
    pub fn label(self) -> &'static str {
        match self {
            VenueClass::Journal => "journal",
            VenueClass::Conference => "conference",
            VenueClass::Misc => "misc",
        }
    }
}

/// Classify a raw venue descriptor.
///
/// The mapping is an exact string match on the two descriptor values that
/// denote journal and conference papers; every other descriptor (books,
/// biographies, editorial letters, missing or multi-valued entries) falls
/// into [`VenueClass::Misc`]. Total: every string classifies.
pub fn classify_venue(doc_type: &str) -> VenueClass {
    match doc_type {
        "Article; Article" => VenueClass::Journal,
        "Proceedings Paper; Meeting" => VenueClass::Conference,
        _ => VenueClass::Misc,
    }
}

/// Keep only records with `min_year <= year <= max_year`, preserving order.
pub fn filter_years(
    records: Vec<PaperRecord>,
    min_year: i32,
    max_year: i32,
) -> Result<Vec<PaperRecord>> {
    if min_year > max_year {
        return Err(Error::InvertedYearRange {
            min: min_year,
            max: max_year,
        });
    }
    let mut records = records;
    records.retain(|r| (min_year..=max_year).contains(&r.year));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn rec(id: &str, year: i32) -> PaperRecord {
        PaperRecord {
            id: id.to_string(),
            year,
            doc_type: "Article; Article".to_string(),
            keywords: vec![],
        }
    }

    #[test]
    fn venue_classification_matches_known_descriptors() {
        assert_eq!(classify_venue("Article; Article"), VenueClass::Journal);
        assert_eq!(
            classify_venue("Proceedings Paper; Meeting"),
            VenueClass::Conference
        );
        assert_eq!(classify_venue("Book"), VenueClass::Misc);
        assert_eq!(classify_venue(""), VenueClass::Misc);
        // Near-misses stay Misc; the match is exact.
        assert_eq!(classify_venue("article; article"), VenueClass::Misc);
        assert_eq!(classify_venue("Article;Article"), VenueClass::Misc);
    }

    #[test]
    fn filter_years_keeps_boundaries() {
        let records = vec![
            rec("a", 1989),
            rec("b", 1990),
            rec("c", 2016),
            rec("d", 2017),
        ];
        let kept = filter_years(records, 1990, 2016).unwrap();
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].id, "b");
        assert_eq!(kept[1].id, "c");
    }

    #[test]
    fn filter_years_empty_input() {
        assert!(filter_years(vec![], 1990, 2016).unwrap().is_empty());
    }

    #[test]
    fn filter_years_rejects_inverted_range() {
        let err = filter_years(vec![rec("a", 1995)], 2000, 1990).unwrap_err();
        assert_eq!(
            err,
            Error::InvertedYearRange {
                min: 2000,
                max: 1990
            }
        );
    }

    #[test]
    fn filter_years_is_idempotent() {
        let records = vec![rec("a", 1991), rec("b", 2005), rec("c", 2020)];
        let once = filter_years(records, 1990, 2016).unwrap();
        let twice = filter_years(once.clone(), 1990, 2016).unwrap();
        assert_eq!(once, twice);
    }
}
