//! `kwlife`: keyword lifecycle analytics over bibliographic corpora.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use kwlife_cli::config::{ConfigOverlay, PipelineConfig};
use kwlife_cli::ingest::InputFormat;
use kwlife_cli::synth::SynthConfig;
use kwlife_cli::{pipeline, synth, CliError};

/// Detect keyword bursts and measure keyword survival in a corpus of
/// bibliographic records.
#[derive(Parser)]
#[command(name = "kwlife", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus statistics (stats.json) and yearly trends (trend.csv).
    Stats(RunArgs),
    /// Burst detection: ranked list (bursts.csv) and timeline (timeline.json).
    Bursts(RunArgs),
    /// Survival curves (km_<group>.csv) and the log-rank test (logrank.json).
    Survival(RunArgs),
    /// All of the above in one run.
    Pipeline(RunArgs),
    /// Generate a seeded synthetic corpus file.
    Synth(SynthArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Corpus file to analyze.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input encoding: jsonl or csv. Default: by file extension.
    #[arg(long)]
    format: Option<InputFormat>,
    /// First publication year kept.
    #[arg(long)]
    min_year: Option<i32>,
    /// Last publication year kept.
    #[arg(long)]
    max_year: Option<i32>,
    /// Minimum papers a keyword needs to enter burst detection.
    #[arg(long)]
    min_papers: Option<u32>,
    /// Elevated-to-baseline rate ratio of the burst automaton.
    #[arg(long)]
    s: Option<f64>,
    /// Burst entry cost scale.
    #[arg(long)]
    gamma: Option<f64>,
    /// First introduction year of the survival cohort.
    #[arg(long)]
    intro_start: Option<i32>,
    /// Last introduction year of the survival cohort.
    #[arg(long)]
    intro_end: Option<i32>,
    /// Observation horizon year.
    #[arg(long)]
    horizon: Option<i32>,
    /// Years of absence that count as keyword death.
    #[arg(long)]
    gap: Option<i32>,
    /// Timeline length.
    #[arg(long)]
    top: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file with key=value lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Corpus file to write.
    #[arg(long)]
    out: PathBuf,
    /// Output encoding: jsonl or csv. Default: by file extension.
    #[arg(long)]
    format: Option<InputFormat>,
    /// RNG seed; equal seeds reproduce the corpus byte for byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of records.
    #[arg(long, default_value_t = 1000)]
    records: usize,
    /// Number of distinct raw keyword strings.
    #[arg(long, default_value_t = 1500)]
    keywords: usize,
    /// First publication year.
    #[arg(long, default_value_t = 1990)]
    min_year: i32,
    /// Last publication year.
    #[arg(long, default_value_t = 2016)]
    max_year: i32,
}

impl RunArgs {
    fn into_config(self) -> Result<PipelineConfig, CliError> {
        let file_layer = match &self.config {
            Some(path) => ConfigOverlay::from_file(path)?,
            None => ConfigOverlay::default(),
        };
        let flag_layer = ConfigOverlay {
            input: self.input,
            format: self.format,
            min_year: self.min_year,
            max_year: self.max_year,
            min_papers: self.min_papers,
            s: self.s,
            gamma: self.gamma,
            intro_start: self.intro_start,
            intro_end: self.intro_end,
            horizon: self.horizon,
            gap: self.gap,
            top: self.top,
            out: self.out,
        };
        PipelineConfig::resolve(flag_layer.over(file_layer))
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Stats(args) => pipeline::run_stats(&args.into_config()?),
        Command::Bursts(args) => pipeline::run_bursts(&args.into_config()?),
        Command::Survival(args) => pipeline::run_survival(&args.into_config()?),
        Command::Pipeline(args) => pipeline::run_pipeline(&args.into_config()?),
        Command::Synth(args) => {
            let format = args
                .format
                .unwrap_or_else(|| InputFormat::from_extension(&args.out));
            let config = SynthConfig {
                seed: args.seed,
                records: args.records,
                keywords: args.keywords,
                min_year: args.min_year,
                max_year: args.max_year,
            };
            synth::generate_to_file(&config, &args.out, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap writes help to stdout and errors to stderr
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
