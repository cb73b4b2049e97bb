//! Pipeline configuration: defaults, config files and flag precedence.
//!
//! Settings resolve in three layers: built-in defaults at the bottom, then
//! values from a `key=value` config file, then command-line flags on top.
//! The effective configuration is echoed to `run_config.json` in the output
//! directory so every run leaves a reproducibility artifact.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use kwlife_core::{BurstParams, SurvivalConfig};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::ingest::InputFormat;

/// Fully resolved settings for one analysis run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub min_year: i32,
    pub max_year: i32,
    pub min_papers: u32,
    pub s: f64,
    pub gamma: f64,
    pub intro_start: i32,
    pub intro_end: i32,
    pub horizon: i32,
    pub gap: i32,
    pub top: usize,
    pub out: PathBuf,
}

/// One configuration layer; unset fields defer to the layer below.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverlay {
    pub input: Option<PathBuf>,
    pub format: Option<InputFormat>,
    pub min_year: Option<i32>,
    pub max_year: Option<i32>,
    pub min_papers: Option<u32>,
    pub s: Option<f64>,
    pub gamma: Option<f64>,
    pub intro_start: Option<i32>,
    pub intro_end: Option<i32>,
    pub horizon: Option<i32>,
    pub gap: Option<i32>,
    pub top: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ConfigOverlay {
    /// Read a config file: one `key=value` per line, `#` comments and blank
    /// lines allowed, keys spelled like the command-line flags.
    pub fn from_file(path: &Path) -> Result<ConfigOverlay> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
        ConfigOverlay::parse(&text).map_err(|e| match e {
            CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Parse config-file text. Unknown keys are rejected.
    pub fn parse(text: &str) -> Result<ConfigOverlay> {
        let mut overlay = ConfigOverlay::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Validation(format!(
                    "config line {line_no}: expected key=value, got {line:?}"
                )));
            };
            overlay.set(key.trim(), value.trim(), line_no)?;
        }
        Ok(overlay)
    }

    fn set(&mut self, key: &str, value: &str, line_no: usize) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str, line_no: usize) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            value.parse().map_err(|e| {
                CliError::Validation(format!(
                    "config line {line_no}: invalid value {value:?} for {key}: {e}"
                ))
            })
        }

        match key {
            "input" => self.input = Some(PathBuf::from(value)),
            "format" => self.format = Some(parse(key, value, line_no)?),
            "min-year" => self.min_year = Some(parse(key, value, line_no)?),
            "max-year" => self.max_year = Some(parse(key, value, line_no)?),
            "min-papers" => self.min_papers = Some(parse(key, value, line_no)?),
            "s" => self.s = Some(parse(key, value, line_no)?),
            "gamma" => self.gamma = Some(parse(key, value, line_no)?),
            "intro-start" => self.intro_start = Some(parse(key, value, line_no)?),
            "intro-end" => self.intro_end = Some(parse(key, value, line_no)?),
            "horizon" => self.horizon = Some(parse(key, value, line_no)?),
            "gap" => self.gap = Some(parse(key, value, line_no)?),
            "top" => self.top = Some(parse(key, value, line_no)?),
            "out" => self.out = Some(PathBuf::from(value)),
            other => {
                return Err(CliError::Validation(format!(
                    "config line {line_no}: unknown key {other:?}"
                )))
            }
        }
        Ok(())
    }

    /// Lay `self` over `base`: set fields win, unset fields fall through.
    pub fn over(self, base: ConfigOverlay) -> ConfigOverlay {
        ConfigOverlay {
            input: self.input.or(base.input),
            format: self.format.or(base.format),
            min_year: self.min_year.or(base.min_year),
            max_year: self.max_year.or(base.max_year),
            min_papers: self.min_papers.or(base.min_papers),
            s: self.s.or(base.s),
            gamma: self.gamma.or(base.gamma),
            intro_start: self.intro_start.or(base.intro_start),
            intro_end: self.intro_end.or(base.intro_end),
            horizon: self.horizon.or(base.horizon),
            gap: self.gap.or(base.gap),
            top: self.top.or(base.top),
            out: self.out.or(base.out),
        }
    }
}

impl PipelineConfig {
    /// Fill unset fields with defaults, then validate.
    ///
    /// `input` has no default and must come from a flag or a config file.
    /// An unset `format` is inferred from the input file extension.
    pub fn resolve(overlay: ConfigOverlay) -> Result<PipelineConfig> {
        let Some(input) = overlay.input else {
            return Err(CliError::Validation(
                "missing input file: pass --input or set input= in the config file".to_string(),
            ));
        };
        let format = overlay
            .format
            .unwrap_or_else(|| InputFormat::from_extension(&input));
        let config = PipelineConfig {
            input,
            format,
            min_year: overlay.min_year.unwrap_or(1990),
            max_year: overlay.max_year.unwrap_or(2016),
            min_papers: overlay.min_papers.unwrap_or(20),
            s: overlay.s.unwrap_or(2.0),
            gamma: overlay.gamma.unwrap_or(1.0),
            intro_start: overlay.intro_start.unwrap_or(2003),
            intro_end: overlay.intro_end.unwrap_or(2014),
            horizon: overlay.horizon.unwrap_or(2016),
            gap: overlay.gap.unwrap_or(2),
            top: overlay.top.unwrap_or(10),
            out: overlay.out.unwrap_or_else(|| PathBuf::from("out")),
        };
        config.validate()?;
        Ok(config)
    }

    /// Check every range invariant the analysis modules will rely on, so a
    /// bad combination fails before any file is touched.
    pub fn validate(&self) -> Result<()> {
        if self.min_year > self.max_year {
            return Err(CliError::Validation(format!(
                "year range inverted: min-year {} > max-year {}",
                self.min_year, self.max_year
            )));
        }
        if self.min_papers == 0 {
            return Err(CliError::Validation(
                "min-papers must be at least 1".to_string(),
            ));
        }
        if self.top == 0 {
            return Err(CliError::Validation("top must be at least 1".to_string()));
        }
        self.burst_params()?;
        self.survival_config().validate()?;
        Ok(())
    }

    /// Burst automaton parameters from the `s` and `gamma` settings.
    pub fn burst_params(&self) -> Result<BurstParams> {
        Ok(BurstParams::new(self.s, self.gamma)?)
    }

    /// Cohort window settings for the survival analysis.
    pub fn survival_config(&self) -> SurvivalConfig {
        SurvivalConfig {
            intro_start: self.intro_start,
            intro_end: self.intro_end,
            horizon: self.horizon,
            gap: self.gap,
            censor_at_horizon: false,
        }
    }

    /// Render as config-file text; `ConfigOverlay::parse` reads it back
    /// into a fully set overlay.
    pub fn to_file_string(&self) -> String {
        format!(
            "input={}\nformat={}\nmin-year={}\nmax-year={}\nmin-papers={}\ns={}\ngamma={}\nintro-start={}\nintro-end={}\nhorizon={}\ngap={}\ntop={}\nout={}\n",
            self.input.display(),
            self.format,
            self.min_year,
            self.max_year,
            self.min_papers,
            self.s,
            self.gamma,
            self.intro_start,
            self.intro_end,
            self.horizon,
            self.gap,
            self.top,
            self.out.display(),
        )
    }

    /// Echo the effective configuration to `run_config.json` under `out`.
    pub fn write_run_config(&self) -> Result<()> {
        let path = self.out.join("run_config.json");
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Io(format!("serialize run config: {e}")))?;
        let mut file = fs::File::create(&path).map_err(|e| CliError::io("write", &path, e))?;
        writeln!(file, "{json}").map_err(|e| CliError::io("write", &path, e))
    }
}
