//! Corpus file reading and writing.
//!
//! Two encodings carry the same record schema. JSONL holds one object per
//! line: `{"id": str, "year": int, "doc_type": str, "keywords": [str]}`.
//! CSV has the header `id,year,doc_type,keywords` with the keyword list
//! joined by `;` inside one RFC-4180 cell. Parse errors name the offending
//! line of the input file.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use kwlife_core::PaperRecord;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// On-disk corpus encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    #[default]
    Jsonl,
    Csv,
}

impl InputFormat {
    /// Name used on the command line and in config files.
    pub fn label(self) -> &'static str {
        match self {
            InputFormat::Jsonl => "jsonl",
            InputFormat::Csv => "csv",
        }
    }

    /// Pick a format from a file name: `.csv` means CSV, anything else JSONL.
    pub fn from_extension(path: &Path) -> InputFormat {
        match path.extension().and_then(|ext| ext.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Jsonl,
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<InputFormat> {
        match s {
            "jsonl" => Ok(InputFormat::Jsonl),
            "csv" => Ok(InputFormat::Csv),
            other => Err(CliError::Validation(format!(
                "unknown format {other:?}, expected jsonl or csv"
            ))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    id: String,
    year: i32,
    doc_type: String,
    keywords: Vec<String>,
}

#[derive(Serialize)]
struct JsonRowRef<'a> {
    id: &'a str,
    year: i32,
    doc_type: &'a str,
    keywords: &'a [String],
}

const CSV_HEADER: [&str; 4] = ["id", "year", "doc_type", "keywords"];

/// Parse a corpus stream into records.
///
/// Input order is preserved. Blank lines are skipped in JSONL. Keywords
/// are trimmed and empty ones dropped, so parsed records never carry empty
/// keyword strings. Errors on malformed rows, non-positive or non-integer
/// years, empty ids and duplicate ids, naming the input line.
pub fn parse_records(reader: impl Read, format: InputFormat) -> Result<Vec<PaperRecord>> {
    match format {
        InputFormat::Jsonl => parse_jsonl(reader),
        InputFormat::Csv => parse_csv(reader),
    }
}

/// Parse a corpus file, inferring nothing: the caller picks the format.
pub fn parse_records_file(path: &Path, format: InputFormat) -> Result<Vec<PaperRecord>> {
    let file = File::open(path).map_err(|e| CliError::io("open", path, e))?;
    parse_records(BufReader::new(file), format).map_err(|e| match e {
        CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn parse_jsonl(reader: impl Read) -> Result<Vec<PaperRecord>> {
    let mut records = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CliError::Io(format!("read failed at line {line_no}: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonRow = serde_json::from_str(&line)
            .map_err(|e| CliError::Validation(format!("line {line_no}: {e}")))?;
        records.push(finish_row(row, line_no, &mut seen_ids)?);
    }
    Ok(records)
}

fn parse_csv(reader: impl Read) -> Result<Vec<PaperRecord>> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = csv_reader
        .headers()
        .map_err(|e| CliError::Validation(format!("line 1: {e}")))?;
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Ok(Vec::new());
    }
    if headers != CSV_HEADER.as_slice() {
        return Err(CliError::Validation(format!(
            "line 1: header must be {}, got {:?}",
            CSV_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut records = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for result in csv_reader.records() {
        let row = result.map_err(|e| {
            let line = e
                .position()
                .map_or_else(|| "?".to_string(), |p| p.line().to_string());
            CliError::Validation(format!("line {line}: {e}"))
        })?;
        let line_no = row.position().map_or(0, |p| p.line()) as usize;
        let year: i32 = row[1].trim().parse().map_err(|_| {
            CliError::Validation(format!(
                "line {line_no}: year {:?} is not an integer",
                &row[1]
            ))
        })?;
        let json_row = JsonRow {
            id: row[0].to_string(),
            year,
            doc_type: row[2].to_string(),
            keywords: row[3].split(';').map(str::to_string).collect(),
        };
        records.push(finish_row(json_row, line_no, &mut seen_ids)?);
    }
    Ok(records)
}

fn finish_row(
    row: JsonRow,
    line_no: usize,
    seen_ids: &mut BTreeSet<String>,
) -> Result<PaperRecord> {
    if row.id.is_empty() {
        return Err(CliError::Validation(format!("line {line_no}: empty id")));
    }
    if row.year <= 0 {
        return Err(CliError::Validation(format!(
            "line {line_no}: year {} is not positive",
            row.year
        )));
    }
    if !seen_ids.insert(row.id.clone()) {
        return Err(CliError::Validation(format!(
            "line {line_no}: duplicate id {:?}",
            row.id
        )));
    }
    let keywords = row
        .keywords
        .into_iter()
        .filter_map(|kw| {
            let trimmed = kw.trim();
            (!trimmed.is_empty()).then(|| trimmed.to_string())
        })
        .collect();
    Ok(PaperRecord {
        id: row.id,
        year: row.year,
        doc_type: row.doc_type,
        keywords,
    })
}

/// Serialize records so that [`parse_records`] reads them back unchanged.
///
/// The CSV keyword cell joins on `;`, so keywords containing `;` only
/// round-trip through JSONL.
pub fn write_records(
    writer: &mut impl Write,
    records: &[PaperRecord],
    format: InputFormat,
) -> Result<()> {
    match format {
        InputFormat::Jsonl => {
            for record in records {
                let row = JsonRowRef {
                    id: &record.id,
                    year: record.year,
                    doc_type: &record.doc_type,
                    keywords: &record.keywords,
                };
                let line = serde_json::to_string(&row)
                    .map_err(|e| CliError::Io(format!("serialize failed: {e}")))?;
                writeln!(writer, "{line}")
                    .map_err(|e| CliError::Io(format!("write failed: {e}")))?;
            }
        }
        InputFormat::Csv => {
            let mut csv_writer = csv::Writer::from_writer(writer);
            let io_err = |e: csv::Error| CliError::Io(format!("write failed: {e}"));
            csv_writer.write_record(CSV_HEADER).map_err(io_err)?;
            for record in records {
                csv_writer
                    .write_record([
                        record.id.as_str(),
                        &record.year.to_string(),
                        &record.doc_type,
                        &record.keywords.join(";"),
                    ])
                    .map_err(io_err)?;
            }
            csv_writer
                .flush()
                .map_err(|e| CliError::Io(format!("write failed: {e}")))?;
        }
    }
    Ok(())
}

/// Write records to a file in the given format.
pub fn write_records_file(path: &Path, records: &[PaperRecord], format: InputFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io("write", path, e))?;
    let mut writer = std::io::BufWriter::new(file);
    write_records(&mut writer, records, format)?;
    writer.flush().map_err(|e| CliError::io("write", path, e))
}
