//! Orchestration from a corpus file to output artifacts.
//!
//! Each entry point loads the corpus once, writes `run_config.json` to the
//! output directory, then emits its artifact set: `stats` produces
//! `stats.json` and `trend.csv`; `bursts` produces `bursts.csv` and
//! `timeline.json`; `survival` produces `km_journal.csv`,
//! `km_conference.csv` and `logrank.json`; `pipeline` produces all of
//! them. Identical inputs and configuration yield byte-identical files.

use std::fs;

use kwlife_core::{
    build_matrix, build_survival_samples, descriptive_stats, detect_bursts, filter_years,
    km_estimate, log_rank_test, render_timeline, trend_series, AliasTable, KppDenominator,
    NewKeywordMode, PaperRecord, SurvivalSample, TotalsMode, VenueClass,
};

use crate::config::PipelineConfig;
use crate::error::Result;
use crate::export;
use crate::ingest;

/// A parsed, year-filtered corpus with its alias table.
pub struct LoadedCorpus {
    pub records: Vec<PaperRecord>,
    pub aliases: AliasTable,
}

/// Read, filter and canonicalize the configured input file.
pub fn load_corpus(config: &PipelineConfig) -> Result<LoadedCorpus> {
    let records = ingest::parse_records_file(&config.input, config.format)?;
    let records = filter_years(records, config.min_year, config.max_year)?;
    let aliases = AliasTable::build(&records);
    Ok(LoadedCorpus { records, aliases })
}

/// Subcommand entry points. Each loads the corpus, prepares the output
/// directory and emits its artifacts.
pub fn run_stats(config: &PipelineConfig) -> Result<()> {
    let corpus = load_corpus(config)?;
    prepare_output(config)?;
    emit_stats(&corpus, config)
}

pub fn run_bursts(config: &PipelineConfig) -> Result<()> {
    let corpus = load_corpus(config)?;
    prepare_output(config)?;
    emit_bursts(&corpus, config)
}

pub fn run_survival(config: &PipelineConfig) -> Result<()> {
    let corpus = load_corpus(config)?;
    prepare_output(config)?;
    emit_survival(&corpus, config)
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<()> {
    let corpus = load_corpus(config)?;
    prepare_output(config)?;
    emit_stats(&corpus, config)?;
    emit_bursts(&corpus, config)?;
    emit_survival(&corpus, config)
}

fn prepare_output(config: &PipelineConfig) -> Result<()> {
    fs::create_dir_all(&config.out)
        .map_err(|e| crate::error::CliError::io("create directory", &config.out, e))?;
    config.write_run_config()
}

fn emit_stats(corpus: &LoadedCorpus, config: &PipelineConfig) -> Result<()> {
    let stats = descriptive_stats(&corpus.records, &corpus.aliases, KppDenominator::default());
    export::save_file(&config.out.join("stats.json"), |w| {
        export::write_stats_json(w, &stats)
    })?;

    let trend = trend_series(&corpus.records, &corpus.aliases, NewKeywordMode::default());
    export::save_file(&config.out.join("trend.csv"), |w| {
        export::write_trend_csv(w, &trend)
    })
}

fn emit_bursts(corpus: &LoadedCorpus, config: &PipelineConfig) -> Result<()> {
    let params = config.burst_params()?;
    let matrix = build_matrix(
        &corpus.records,
        &corpus.aliases,
        config.min_papers,
        TotalsMode::default(),
    )?;
    let bursts = detect_bursts(&matrix, &params)?;

    export::save_file(&config.out.join("bursts.csv"), |w| {
        export::write_bursts_csv(w, &bursts)
    })?;

    let timeline = if bursts.is_empty() {
        Vec::new()
    } else {
        render_timeline(&bursts, config.top)?
    };
    export::save_file(&config.out.join("timeline.json"), |w| {
        export::write_timeline_json(w, &timeline)
    })
}

fn emit_survival(corpus: &LoadedCorpus, config: &PipelineConfig) -> Result<()> {
    let samples =
        build_survival_samples(&corpus.records, &corpus.aliases, &config.survival_config())?;
    let (journal, conference): (Vec<SurvivalSample>, Vec<SurvivalSample>) = samples
        .into_iter()
        .partition(|sample| sample.group == VenueClass::Journal);

    for (samples, group) in [
        (&journal, VenueClass::Journal),
        (&conference, VenueClass::Conference),
    ] {
        let curve = km_estimate(samples).map_err(|_| {
            crate::error::CliError::Validation(format!(
                "no {} keywords enter the cohort window; nothing to estimate",
                group.label()
            ))
        })?;
        let name = format!("km_{}.csv", group.label());
        export::save_file(&config.out.join(name), |w| export::write_km_csv(w, &curve))?;
    }

    let result = log_rank_test(&journal, &conference)?;
    export::save_file(&config.out.join("logrank.json"), |w| {
        export::write_logrank_json(
            w,
            &result,
            [VenueClass::Journal.label(), VenueClass::Conference.label()],
        )
    })
}
