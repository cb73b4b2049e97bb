//! Writers for the analysis output artifacts.
//!
//! Every writer produces deterministic bytes for a given value, so runs
//! with identical inputs and configuration are byte-identical. CSV files
//! carry a header row; JSON files end with a newline.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use kwlife_core::{
    AliasTable, BurstInterval, CorpusStats, KMCurve, KeywordMatrix, LogRankResult, TimelineRow,
    TrendSeries,
};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Write `stats.json`: one row per venue class plus the overall row.
pub fn write_stats_json(writer: &mut impl Write, stats: &CorpusStats) -> io::Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        class: &'a str,
        num_papers: u32,
        papers_with_keywords: u32,
        num_unique_keywords: u32,
        keywords_per_paper: f64,
    }
    #[derive(Serialize)]
    struct StatsFile<'a> {
        classes: Vec<Row<'a>>,
    }

    let file = StatsFile {
        classes: stats
            .rows()
            .iter()
            .map(|&(class, row)| Row {
                class,
                num_papers: row.num_papers,
                papers_with_keywords: row.papers_with_keywords,
                num_unique_keywords: row.num_unique_keywords,
                keywords_per_paper: row.keywords_per_paper,
            })
            .collect(),
    };
    write_json(writer, &file)
}

/// Write `trend.csv` with the header `year,new_papers,new_keywords`.
pub fn write_trend_csv(writer: &mut impl Write, trend: &TrendSeries) -> io::Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(["year", "new_papers", "new_keywords"])?;
    for (i, year) in trend.years.iter().enumerate() {
        csv_writer.write_record([
            year.to_string(),
            trend.new_papers[i].to_string(),
            trend.new_keywords[i].to_string(),
        ])?;
    }
    csv_writer.flush()
}

/// Write `bursts.csv`: ranked intervals, weights at six decimals.
///
/// An empty burst list produces the header row alone.
pub fn write_bursts_csv(writer: &mut impl Write, bursts: &[BurstInterval]) -> io::Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(["rank", "keyword", "start_year", "end_year", "weight"])?;
    for (idx, burst) in bursts.iter().enumerate() {
        csv_writer.write_record([
            (idx + 1).to_string(),
            burst.keyword.clone(),
            burst.start_year.to_string(),
            burst.end_year.to_string(),
            format!("{:.6}", burst.weight),
        ])?;
    }
    csv_writer.flush()
}

/// Write `timeline.json`: the top bursts with plot-ready widths.
pub fn write_timeline_json(writer: &mut impl Write, rows: &[TimelineRow]) -> io::Result<()> {
    #[derive(Serialize)]
    struct Entry<'a> {
        keyword: &'a str,
        start_year: i32,
        end_year: i32,
        weight: f64,
        normalized_width: f64,
    }

    let entries: Vec<Entry> = rows
        .iter()
        .map(|row| Entry {
            keyword: &row.keyword,
            start_year: row.start_year,
            end_year: row.end_year,
            weight: row.weight,
            normalized_width: row.normalized_width,
        })
        .collect();
    write_json(writer, &entries)
}

/// Write one group's `km_<group>.csv` curve, survival at six decimals.
pub fn write_km_csv(writer: &mut impl Write, curve: &KMCurve) -> io::Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(["time", "n_at_risk", "deaths", "survival"])?;
    for i in 0..curve.len() {
        csv_writer.write_record([
            curve.event_times[i].to_string(),
            curve.at_risk[i].to_string(),
            curve.deaths[i].to_string(),
            format!("{:.6}", curve.survival[i]),
        ])?;
    }
    csv_writer.flush()
}

/// Write `logrank.json` for a two-group comparison.
pub fn write_logrank_json(
    writer: &mut impl Write,
    result: &LogRankResult,
    names: [&str; 2],
) -> io::Result<()> {
    #[derive(Serialize)]
    struct Group<'a> {
        name: &'a str,
        n: u32,
        observed: u32,
        expected: f64,
        naive_component: f64,
    }
    #[derive(Serialize)]
    struct LogRankFile<'a> {
        groups: [Group<'a>; 2],
        chi_sq: f64,
        df: u32,
        p_value: f64,
    }

    let groups = [0, 1].map(|i| Group {
        name: names[i],
        n: result.groups[i].n,
        observed: result.groups[i].observed,
        expected: result.groups[i].expected,
        naive_component: result.groups[i].naive_component,
    });
    let file = LogRankFile {
        groups,
        chi_sq: result.chi_sq,
        df: result.df,
        p_value: result.p_value,
    };
    write_json(writer, &file)
}

/// Write the alias table as CSV: `raw,key,display,count`.
pub fn write_alias_csv(writer: &mut impl Write, table: &AliasTable) -> io::Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(["raw", "key", "display", "count"])?;
    for row in table.rows() {
        csv_writer.write_record([row.raw, row.key, row.display, &row.count.to_string()])?;
    }
    csv_writer.flush()
}

/// Write a keyword matrix as CSV.
///
/// The first row is `year` followed by the per-year totals; each further
/// row is a keyword followed by its per-year counts. Years themselves are
/// implicit: [`read_matrix_csv`] takes the starting year as a parameter.
pub fn write_matrix_csv(writer: &mut impl Write, matrix: &KeywordMatrix) -> io::Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let totals_row =
        std::iter::once("year".to_string()).chain(matrix.totals().iter().map(u32::to_string));
    csv_writer.write_record(totals_row)?;
    for (keyword, counts) in matrix.rows() {
        let row = std::iter::once(keyword.to_string()).chain(counts.iter().map(u32::to_string));
        csv_writer.write_record(row)?;
    }
    csv_writer.flush()
}

/// Read a matrix written by [`write_matrix_csv`] back, anchored at
/// `min_year`.
pub fn read_matrix_csv(reader: impl Read, min_year: i32) -> Result<KeywordMatrix> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(reader);
    let mut rows = csv_reader.records();

    let parse_counts = |row: &csv::StringRecord, line: usize| -> Result<Vec<u32>> {
        row.iter()
            .skip(1)
            .map(|cell| {
                cell.trim().parse().map_err(|_| {
                    CliError::Validation(format!("line {line}: count {cell:?} is not an integer"))
                })
            })
            .collect()
    };

    let Some(first) = rows.next() else {
        return Err(CliError::Validation("matrix file is empty".to_string()));
    };
    let first = first.map_err(|e| CliError::Validation(format!("line 1: {e}")))?;
    if first.get(0) != Some("year") {
        return Err(CliError::Validation(
            "line 1: first matrix row must start with \"year\"".to_string(),
        ));
    }
    let totals = parse_counts(&first, 1)?;

    let mut keywords = Vec::new();
    for (idx, row) in rows.enumerate() {
        let line = idx + 2;
        let row = row.map_err(|e| CliError::Validation(format!("line {line}: {e}")))?;
        let Some(keyword) = row.get(0) else {
            return Err(CliError::Validation(format!("line {line}: empty row")));
        };
        keywords.push((keyword.to_string(), parse_counts(&row, line)?));
    }
    Ok(KeywordMatrix::from_parts(min_year, totals, keywords)?)
}

fn write_json(writer: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *writer, value)?;
    writeln!(writer)
}

/// Create `path` and run `body` against a buffered writer, mapping any
/// failure to an I/O error naming the file.
pub fn save_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let attempt = || -> io::Result<()> {
        let mut writer = BufWriter::new(File::create(path)?);
        body(&mut writer)?;
        writer.flush()
    };
    attempt().map_err(|e| CliError::io("write", path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kwlife_core::{
        build_matrix, descriptive_stats, km_estimate, log_rank_test, KppDenominator, PaperRecord,
        SurvivalSample, TotalsMode, VenueClass,
    };

    fn record(id: &str, year: i32, keywords: &[&str]) -> PaperRecord {
        PaperRecord {
            id: id.to_string(),
            year,
            doc_type: "Article; Article".to_string(),
            keywords: keywords.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn render<F: FnOnce(&mut Vec<u8>) -> io::Result<()>>(body: F) -> String {
        let mut buffer = Vec::new();
        body(&mut buffer).unwrap();
        String::from_utf8(buffer).unwrap()
    }

    #[test]
    fn stats_json_lists_four_classes() {
        let records = [record("a", 2000, &["logic"]), record("b", 2000, &[])];
        let aliases = AliasTable::build(&records);
        let stats = descriptive_stats(&records, &aliases, KppDenominator::default());
        let text = render(|w| write_stats_json(w, &stats));
        assert!(text.ends_with('\n'));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let classes = parsed["classes"].as_array().unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes[0]["class"], "journal");
        assert_eq!(classes[0]["num_papers"], 2);
        assert_eq!(classes[3]["class"], "all");
    }

    #[test]
    fn bursts_csv_has_ranks_and_six_decimals() {
        let bursts = [BurstInterval {
            keyword: "neural network".to_string(),
            start_year: 1991,
            end_year: 1995,
            weight: 1.25,
        }];
        let text = render(|w| write_bursts_csv(w, &bursts));
        assert_eq!(
            text,
            "rank,keyword,start_year,end_year,weight\n1,neural network,1991,1995,1.250000\n"
        );
    }

    #[test]
    fn empty_bursts_csv_is_header_only() {
        let text = render(|w| write_bursts_csv(w, &[]));
        assert_eq!(text, "rank,keyword,start_year,end_year,weight\n");
    }

    #[test]
    fn km_csv_rows_match_curve() {
        let samples: Vec<SurvivalSample> = [(1, true), (2, true), (2, false), (3, true)]
            .iter()
            .map(|&(duration, event)| SurvivalSample {
                keyword: format!("k{duration}{event}"),
                group: VenueClass::Journal,
                duration,
                event,
            })
            .collect();
        let curve = km_estimate(&samples).unwrap();
        let text = render(|w| write_km_csv(w, &curve));
        assert_eq!(
            text,
            "time,n_at_risk,deaths,survival\n1,4,1,0.750000\n2,3,1,0.500000\n3,1,1,0.000000\n"
        );
    }

    #[test]
    fn logrank_json_matches_schema() {
        let group_a: Vec<SurvivalSample> = [1u32, 1, 2]
            .iter()
            .enumerate()
            .map(|(i, &duration)| SurvivalSample {
                keyword: format!("a{i}"),
                group: VenueClass::Journal,
                duration,
                event: true,
            })
            .collect();
        let group_b: Vec<SurvivalSample> = [2u32, 3, 3]
            .iter()
            .enumerate()
            .map(|(i, &duration)| SurvivalSample {
                keyword: format!("b{i}"),
                group: VenueClass::Conference,
                duration,
                event: true,
            })
            .collect();
        let result = log_rank_test(&group_a, &group_b).unwrap();
        let text = render(|w| write_logrank_json(w, &result, ["journal", "conference"]));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["groups"][0]["name"], "journal");
        assert_eq!(parsed["groups"][0]["n"], 3);
        assert_eq!(parsed["groups"][0]["observed"], 3);
        assert_eq!(parsed["groups"][1]["name"], "conference");
        assert_eq!(parsed["df"], 1);
        assert!(parsed["chi_sq"].is_number());
        assert!(parsed["p_value"].is_number());
    }

    #[test]
    fn trend_csv_rows_align_with_years() {
        let records = [
            record("a", 2000, &["logic"]),
            record("b", 2002, &["logic", "agents"]),
        ];
        let aliases = AliasTable::build(&records);
        let trend = kwlife_core::trend_series(&records, &aliases, Default::default());
        let text = render(|w| write_trend_csv(w, &trend));
        assert_eq!(
            text,
            "year,new_papers,new_keywords\n2000,1,1\n2001,0,0\n2002,1,1\n"
        );
    }

    #[test]
    fn alias_csv_lists_rows() {
        let records = [record("a", 2000, &["Logic", "logic"])];
        let aliases = AliasTable::build(&records);
        let text = render(|w| write_alias_csv(w, &aliases));
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("raw,key,display,count"));
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("Logic,logic,"));
    }

    #[test]
    fn matrix_csv_round_trips() {
        let records = [
            record("a", 1999, &["logic"]),
            record("b", 2000, &["logic", "agents"]),
            record("c", 2001, &["agents"]),
        ];
        let aliases = AliasTable::build(&records);
        let matrix = build_matrix(&records, &aliases, 1, TotalsMode::default()).unwrap();
        let text = render(|w| write_matrix_csv(w, &matrix));
        assert_eq!(text.lines().next(), Some("year,1,1,1"));
        let back = read_matrix_csv(text.as_bytes(), matrix.min_year()).unwrap();
        assert_eq!(back, matrix);
    }

    #[test]
    fn matrix_csv_rejects_bad_counts() {
        let text = "year,1,2\nlogic,1,x\n";
        let err = read_matrix_csv(text.as_bytes(), 2000).unwrap_err();
        assert!(
            matches!(&err, CliError::Validation(msg) if msg.contains("line 2")),
            "{err}"
        );

        let text = "totals,1,2\n";
        assert!(read_matrix_csv(text.as_bytes(), 2000).is_err());

        let text = "year,1,2\nlogic,3,0\n";
        assert!(read_matrix_csv(text.as_bytes(), 2000).is_err());
    }
}
