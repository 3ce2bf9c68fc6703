//! `vibe`: a staged pipeline from dataset ingestion to keyword masking,
//! grounding/utility scoring, selection, and study statistics. Every stage
//! reads and writes plain files under the output directory.

pub mod artifacts;
pub mod config;
pub mod error;
pub mod stages;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use vibe_core::ingest::DatasetPreset;

use artifacts::{OutDir, Provenance};
use config::{RunConfig, TransportKind};
pub use error::CliError;
use stages::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Stage {
    /// Extract tf-idf keywords from the candidate corpus.
    Keywords,
    /// Mask candidate texts and frames.
    Mask,
    /// Sample k candidate summaries per video.
    Sample,
    /// Score every candidate's grounding and utility.
    Score,
    /// Pick the best candidate per video for the configured weights.
    Select,
    /// Select at every alpha in 0, 0.05, ..., 1 and extract the Pareto front.
    Sweep,
    /// Per-condition study table, Welch tests, and correlations.
    Stats,
    /// Markdown summary of scores, fronts, and selections.
    Report,
}

#[derive(Debug, Parser)]
#[command(name = "vibe", version, about = "Score, select and evaluate video summaries")]
pub struct Cli {
    #[command(subcommand)]
    pub stage: Stage,
    /// Run configuration (TOML).
    #[arg(long, global = true, default_value = "vibe.toml")]
    pub config: PathBuf,
    #[arg(long, global = true, value_enum)]
    pub transport: Option<TransportKind>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub max_inflight: Option<usize>,
    /// Grounding weight; beta becomes 1 - alpha.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Make `select` run the full alpha sweep.
    #[arg(long, global = true)]
    pub sweep: bool,
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
}

impl Cli {
    /// The loaded config with command-line overrides applied.
    pub fn effective_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(t) = self.transport {
            cfg.provider.transport = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(n) = self.max_inflight {
            cfg.scoring.max_inflight = n;
        }
        if let Some(a) = self.alpha {
            cfg.selection.alpha = a;
            cfg.selection.beta = None;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs one stage and returns the files it wrote.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let cfg = cli.effective_config()?;
    let preset = DatasetPreset::named(&cfg.dataset.preset)?;
    let prov = Provenance { config_hash: cfg.hash(), templates: cfg.template_ids() };
    let ctx = Context { out: OutDir::new(&cli.out, prov), cfg, preset };
    let outputs = match cli.stage {
        Stage::Keywords => stages::keywords(&ctx)?,
        Stage::Mask => stages::mask(&ctx)?,
        Stage::Sample => stages::sample(&ctx)?,
        Stage::Score => stages::score(&ctx)?,
        Stage::Select if cli.sweep => stages::sweep_stage(&ctx)?,
        Stage::Select => stages::select(&ctx)?,
        Stage::Sweep => stages::sweep_stage(&ctx)?,
        Stage::Stats => stages::stats(&ctx)?,
        Stage::Report => stages::report(&ctx)?,
    };
    ctx.out.commit(outputs)
}
