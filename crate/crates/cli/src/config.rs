//! Run configuration: a TOML file plus command-line and environment overrides.
//!
//! Relative paths resolve against the directory holding the config file.
//! Secrets never live here; the API key comes from `VIBE_API_KEY` only.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use vibe_core::scoring::{AnswerForm, GROUNDING_TEMPLATE, UTILITY_TEMPLATE};

use crate::error::CliError;

pub const ENV_API_KEY: &str = "VIBE_API_KEY";
pub const ENV_ENDPOINT: &str = "VIBE_ENDPOINT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TransportKind {
    Live,
    #[default]
    Mock,
    Replay,
}

impl TransportKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Live => "live",
            Self::Mock => "mock",
            Self::Replay => "replay",
        }
    }
}

impl FromStr for TransportKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "live" => Ok(Self::Live),
            "mock" => Ok(Self::Mock),
            "replay" => Ok(Self::Replay),
            other => Err(format!("unknown transport {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSection {
    pub root: PathBuf,
    #[serde(default = "default_preset")]
    pub preset: String,
}

fn default_preset() -> String {
    "custom".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProviderSection {
    pub transport: TransportKind,
    pub model: String,
    /// Base URL; `VIBE_ENDPOINT` wins when set.
    pub endpoint: Option<String>,
    /// Request path under the endpoint.
    pub path: Option<String>,
    /// Joint table for the mock transport.
    pub joint: Option<PathBuf>,
    /// Recorded exchanges for the replay transport.
    pub fixtures: Option<PathBuf>,
    /// When set on the live transport, every exchange is also recorded here.
    pub record: Option<PathBuf>,
    /// Extra prompt templates, `*.txt` keyed by file stem.
    pub templates: Option<PathBuf>,
    pub max_attempts: u32,
}

impl Default for ProviderSection {
    fn default() -> Self {
        Self {
            transport: TransportKind::Mock,
            model: "mock-joint".into(),
            endpoint: None,
            path: None,
            joint: None,
            fixtures: None,
            record: None,
            templates: None,
            max_attempts: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingSection {
    pub k: usize,
    pub temperatures: Vec<f64>,
    pub instruction: String,
    pub template: String,
}

impl Default for SamplingSection {
    fn default() -> Self {
        Self {
            k: 5,
            temperatures: vec![0.0, 0.4, 0.7, 1.0, 1.3],
            instruction: "Write a short TL;DR of this video.".into(),
            template: "generation-v1".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScoringSection {
    pub grounding_template: String,
    pub utility_template: String,
    pub answer_form: AnswerForm,
    pub max_inflight: usize,
}

impl Default for ScoringSection {
    fn default() -> Self {
        Self {
            grounding_template: GROUNDING_TEMPLATE.into(),
            utility_template: UTILITY_TEMPLATE.into(),
            answer_form: AnswerForm::Label,
            max_inflight: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelectionSection {
    pub alpha: f64,
    /// Defaults to `1 - alpha`.
    pub beta: Option<f64>,
}

impl Default for SelectionSection {
    fn default() -> Self {
        Self { alpha: 0.5, beta: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StatsSection {
    pub responses: Option<PathBuf>,
    pub stimuli: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: DatasetSection,
    #[serde(default)]
    pub provider: ProviderSection,
    #[serde(default)]
    pub sampling: SamplingSection,
    #[serde(default)]
    pub scoring: ScoringSection,
    #[serde(default)]
    pub selection: SelectionSection,
    #[serde(default)]
    pub stats: StatsSection,
    #[serde(default)]
    pub seed: u64,
    /// Directory relative paths resolve against. Not part of the file.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.sampling.k == 0 {
            return Err(CliError::config("sampling.k must be at least 1"));
        }
        if self.sampling.temperatures.len() != self.sampling.k {
            return Err(CliError::config(format!(
                "sampling.temperatures has {} entries for k = {}",
                self.sampling.temperatures.len(),
                self.sampling.k
            )));
        }
        if self.scoring.max_inflight == 0 {
            return Err(CliError::config("scoring.max_inflight must be at least 1"));
        }
        vibe_core::ingest::DatasetPreset::named(&self.dataset.preset).map_err(|e| CliError::config(e.to_string()))?;
        Ok(())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn beta(&self) -> f64 {
        self.selection.beta.unwrap_or(1.0 - self.selection.alpha)
    }

    /// Short digest of everything that can change an artifact. The worker
    /// count is left out: it never changes results.
    pub fn hash(&self) -> String {
        let mut view = self.clone();
        view.scoring.max_inflight = 0;
        let json = serde_json::to_string(&view).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))[..16].to_string()
    }

    pub fn template_ids(&self) -> String {
        format!("{},{},{}", self.scoring.grounding_template, self.scoring.utility_template, self.sampling.template)
    }
}
