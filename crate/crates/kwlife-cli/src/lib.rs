//! Command-line companion to `kwlife-core`: corpus file formats,
//! configuration handling, output artifacts and a synthetic corpus
//! generator, wired into the `kwlife` binary.

pub mod config;
pub mod error;
pub mod export;
pub mod ingest;
pub mod pipeline;
pub mod synth;

pub use config::{ConfigOverlay, PipelineConfig};
pub use error::{CliError, Result};
pub use ingest::InputFormat;
