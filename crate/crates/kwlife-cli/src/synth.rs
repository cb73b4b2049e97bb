//! Seeded synthetic corpus generation.
//!
//! Builds corpora with a controlled number of records and distinct raw
//! keyword strings. Each underlying concept appears as up to three raw
//! spelling variants (case, hyphenation, pluralization) so normalization
//! has realistic work to do; concept popularity follows a power law; and
//! some concepts get a five-year window of strongly elevated rate so burst
//! detection has something to find. Identical settings produce identical
//! corpora.

use std::path::Path;

use kwlife_core::PaperRecord;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::ingest::{self, InputFormat};

/// Settings for one generated corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthConfig {
    pub seed: u64,
    pub records: usize,
    /// Distinct raw keyword strings the corpus will contain, exactly.
    pub keywords: usize,
    pub min_year: i32,
    pub max_year: i32,
}

impl Default for SynthConfig {
    fn default() -> SynthConfig {
        SynthConfig {
            seed: 0,
            records: 1000,
            keywords: 1500,
            min_year: 1990,
            max_year: 2016,
        }
    }
}

/// Two-character building blocks; all distinct, so equal-length
/// concatenations collide only for equal syllable sequences.
const SYLLABLES: [&str; 32] = [
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "ga", "ge", "gi", "go", "gu", "ka",
    "ke", "ki", "ko", "ku", "la", "le", "li", "lo", "lu", "ma", "me", "mi", "mo", "mu", "na", "ne",
];

const WORDS: usize = 32 * 32 * 32;
const MAX_VARIANTS: usize = 3;
const MAX_CONCEPTS: usize = 2 * WORDS;
/// Upper bound on mandatory keyword placements per record, and therefore on
/// the keywords-to-records ratio.
const MAX_PER_RECORD: usize = 8;
/// Chance that a keyword slot draws from the burst concepts active that
/// year instead of the popularity distribution.
const BURST_MIX: f64 = 0.06;

fn word(index: usize) -> String {
    format!(
        "{}{}{}",
        SYLLABLES[(index >> 10) & 31],
        SYLLABLES[(index >> 5) & 31],
        SYLLABLES[index & 31]
    )
}

/// Base spelling of a concept: lowercase, space-separated, injective.
fn concept_base(index: usize) -> String {
    let j = index >> 1;
    if index & 1 == 0 {
        word(j)
    } else {
        format!("{} {}", word(j), word((j + 1) % WORDS))
    }
}

fn title_case(text: &str) -> String {
    text.split(' ')
        .map(|w| {
            let mut chars = w.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().chain(chars).collect::<String>(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Up to three distinct raw spellings that normalize to the same key.
fn concept_variants(base: &str, count: usize) -> Vec<String> {
    let mut variants = vec![base.to_string()];
    if count >= 2 {
        if base.contains(' ') {
            variants.push(base.replace(' ', "-"));
        } else {
            variants.push(title_case(base));
        }
    }
    if count >= 3 {
        if base.contains(' ') {
            variants.push(format!("{}s", title_case(base)));
        } else {
            variants.push(format!("{}S", base.to_uppercase()));
        }
    }
    variants
}

struct Vocabulary {
    /// Raw variants per concept; concepts ordered by descending popularity.
    variants: Vec<Vec<String>>,
    /// Cumulative popularity weights over concepts.
    cumulative: Vec<f64>,
    /// Per year-offset: indices of burst concepts elevated that year.
    active_bursts: Vec<Vec<usize>>,
}

fn build_vocabulary(config: &SynthConfig) -> Vocabulary {
    let concepts = config.keywords.div_ceil(MAX_VARIANTS);
    let num_years = (config.max_year - config.min_year) as usize + 1;

    let mut variants = Vec::with_capacity(concepts);
    let mut remaining = config.keywords;
    for i in 0..concepts {
        let take = remaining.min(MAX_VARIANTS);
        variants.push(concept_variants(&concept_base(i), take));
        remaining -= take;
    }

    let mut cumulative = Vec::with_capacity(concepts);
    let mut total = 0.0;
    for i in 0..concepts {
        total += 1.0 / ((i + 1) as f64).powf(0.7);
        cumulative.push(total);
    }

    // Every 97th concept bursts for five years; the window start walks
    // through the span so bursts spread over the whole period.
    let mut active_bursts = vec![Vec::new(); num_years];
    if num_years >= 5 {
        for (rank, concept) in (0..concepts).step_by(97).enumerate() {
            let start = (rank * 5) % (num_years - 4);
            for year in &mut active_bursts[start..start + 5] {
                year.push(concept);
            }
        }
    }

    Vocabulary {
        variants,
        cumulative,
        active_bursts,
    }
}

/// Generate a corpus.
///
/// The output contains exactly `config.records` records and exactly
/// `config.keywords` distinct raw keyword strings; every raw string occurs
/// at least once. Errors when the requested counts cannot fit.
pub fn generate(config: &SynthConfig) -> Result<Vec<PaperRecord>> {
    if config.records == 0 {
        return Err(CliError::Validation(
            "records must be at least 1".to_string(),
        ));
    }
    if config.keywords == 0 {
        return Err(CliError::Validation(
            "keywords must be at least 1".to_string(),
        ));
    }
    if config.keywords > config.records * MAX_PER_RECORD {
        return Err(CliError::Validation(format!(
            "{} keywords cannot fit into {} records (at most {} mandatory per record)",
            config.keywords, config.records, MAX_PER_RECORD
        )));
    }
    if config.keywords > MAX_CONCEPTS * MAX_VARIANTS {
        return Err(CliError::Validation(format!(
            "at most {} distinct keywords are supported",
            MAX_CONCEPTS * MAX_VARIANTS
        )));
    }
    if config.min_year > config.max_year {
        return Err(CliError::Validation(format!(
            "year range inverted: min-year {} > max-year {}",
            config.min_year, config.max_year
        )));
    }
    if config.min_year <= 0 {
        return Err(CliError::Validation(
            "min-year must be positive".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let vocabulary = build_vocabulary(config);
    let num_years = (config.max_year - config.min_year) as usize + 1;

    // Publication volume grows over the span, like real indexing does.
    let mut year_cumulative = Vec::with_capacity(num_years);
    let mut year_total = 0.0;
    for k in 0..num_years {
        year_total += 1.0 + 0.08 * k as f64;
        year_cumulative.push(year_total);
    }

    // Each raw string must appear at least once; spread the first
    // occurrences over random records via a shuffled queue.
    let mut queue: Vec<(usize, usize)> = vocabulary
        .variants
        .iter()
        .enumerate()
        .flat_map(|(c, vs)| (0..vs.len()).map(move |v| (c, v)))
        .collect();
    queue.shuffle(&mut rng);

    let sample_index = |cumulative: &[f64], x: f64| cumulative.partition_point(|&c| c <= x);

    let mut records = Vec::with_capacity(config.records);
    for index in 0..config.records {
        let year_x = rng.random_range(0.0..year_total);
        let year_offset = sample_index(&year_cumulative, year_x);
        let year = config.min_year + year_offset as i32;

        let doc_type = match rng.random_range(0.0..1.0) {
            x if x < 0.45 => "Article; Article".to_string(),
            x if x < 0.85 => "Proceedings Paper; Meeting".to_string(),
            _ => ["Review", "Book", "Editorial Material", "Letter"][rng.random_range(0..4)]
                .to_string(),
        };

        let remaining_records = config.records - index;
        let mandatory = queue.len().div_ceil(remaining_records);
        let target = if rng.random_bool(0.07) {
            0
        } else {
            1 + rng.random_range(0..=5)
        };
        let slots = target.max(mandatory);

        let mut keywords: Vec<String> = Vec::with_capacity(slots);
        for _ in 0..mandatory {
            let (concept, variant) = queue.pop().expect("queue drains on schedule");
            keywords.push(vocabulary.variants[concept][variant].clone());
        }
        for _ in mandatory..slots {
            let active = &vocabulary.active_bursts[year_offset];
            let concept = if !active.is_empty() && rng.random_bool(BURST_MIX) {
                active[rng.random_range(0..active.len())]
            } else {
                let x = rng.random_range(0.0..*vocabulary.cumulative.last().unwrap());
                sample_index(&vocabulary.cumulative, x)
            };
            let choices = &vocabulary.variants[concept];
            let raw = &choices[rng.random_range(0..choices.len())];
            if !keywords.iter().any(|k| k == raw) {
                keywords.push(raw.clone());
            }
        }

        records.push(PaperRecord {
            id: format!("s{index:06}"),
            year,
            doc_type,
            keywords,
        });
    }
    Ok(records)
}

/// Generate a corpus and write it to `path`.
pub fn generate_to_file(config: &SynthConfig, path: &Path, format: InputFormat) -> Result<()> {
    let records = generate(config)?;
    ingest::write_records_file(path, &records, format)
}
