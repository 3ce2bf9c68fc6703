//! Teacher-forced log-probability access to a vision-language model.
//!
//! [`Provider`] is the one capability scoring needs: the per-token
//! log-probabilities of a fixed target string continuing a context. Three
//! backends implement it:
//!
//! * [`openai::CompletionsProvider`] over an OpenAI-compatible completions
//!   endpoint with `echo` + `logprobs`, through a [`transport::Transport`]
//!   that is live HTTP, recording, or offline replay;
//! * [`mock::JointProvider`], exact conditionals of a small joint table.

pub mod mock;
pub mod openai;
pub mod template;
pub mod transport;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{CandidateSource, SummaryCandidate, TokenLogProbs, VideoManifest, MASK_TOKEN};
use crate::num::Scalar;

/// Frames shown to the model. `masked` marks frames that went through a mask plan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameSet {
    pub video_id: String,
    pub masked: bool,
    pub paths: Vec<String>,
}

impl FrameSet {
    /// Unmasked frames of a manifest with paths resolved against `root`.
    pub fn from_manifest(manifest: &VideoManifest, root: &Path) -> Self {
        Self {
            video_id: manifest.video_id.clone(),
            masked: false,
            paths: manifest.frame_paths.iter().map(|p| root.join(p).to_string_lossy().into_owned()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    MaskedText,
    Summary,
    Question,
    Options,
    Instruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextBlock {
    pub slot: Slot,
    pub text: String,
}

/// Everything a provider conditions on for one call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoringContext {
    pub frames: Option<FrameSet>,
    pub text_blocks: Vec<TextBlock>,
    pub template_id: String,
}

impl ScoringContext {
    pub fn new(template_id: impl Into<String>) -> Self {
        Self { frames: None, text_blocks: Vec::new(), template_id: template_id.into() }
    }

    pub fn with_frames(mut self, frames: FrameSet) -> Self {
        self.frames = Some(frames);
        self
    }

    pub fn with_text(mut self, slot: Slot, text: impl Into<String>) -> Self {
        self.text_blocks.push(TextBlock { slot, text: text.into() });
        self
    }

    pub fn block(&self, slot: Slot) -> Option<&str> {
        self.text_blocks.iter().find(|b| b.slot == slot).map(|b| b.text.as_str())
    }

    pub fn check(&self) -> Result<(), ProviderError> {
        if self.text_blocks.is_empty() {
            return Err(ProviderError::InvalidRequest("context has no text blocks".into()));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProviderError {
    #[error("echo scoring unsupported: {0}")]
    EchoUnsupported(String),
    #[error("network failure after {attempts} attempt(s): {message}")]
    Network { attempts: u32, message: String },
    #[error("endpoint returned HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("no replay fixture for request {key}")]
    ReplayMiss { key: String },
    #[error("missing credentials: {0}")]
    MissingCredentials(String),
    #[error("malformed response: {0}")]
    Malformed(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("template error: {0}")]
    Template(String),
    #[error("mock provider: {0}")]
    Mock(String),
    #[error("generation unavailable: {0}")]
    GenerationUnavailable(String),
    #[error("fixture i/o: {0}")]
    Io(String),
}

impl ProviderError {
    /// Errors that make every further call pointless; they abort a scoring job.
    pub fn is_fatal(&self) -> bool {
        matches!(
            self,
            ProviderError::EchoUnsupported(_)
                | ProviderError::ReplayMiss { .. }
                | ProviderError::MissingCredentials(_)
                | ProviderError::Template(_)
                | ProviderError::Io(_)
        )
    }

    pub fn is_retryable(&self) -> bool {
        match self {
            ProviderError::Network { .. } => true,
            ProviderError::Http { status, .. } => *status == 429 || *status >= 500,
            _ => false,
        }
    }
}

pub trait Provider<F: Scalar>: Send + Sync {
    /// Stable identifier recorded on every score card.
    fn id(&self) -> &str;

    /// Log-probabilities of `target` as a forced continuation of `ctx`, under
    /// the model's own tokenization.
    fn score_target(&self, ctx: &ScoringContext, target: &str) -> Result<TokenLogProbs<F>, ProviderError>;

    /// Samples one continuation of `ctx`.
    fn generate(&self, ctx: &ScoringContext, temperature: f64, seed: u64) -> Result<String, ProviderError>;
}

/// Forced-continuation log-probability of each label after the answer cue.
/// Labels are scored independently; see [`softmax_over_options`] for the
/// renormalized diagnostic.
pub fn option_logprobs<F: Scalar, S: AsRef<str>>(
    provider: &dyn Provider<F>,
    ctx: &ScoringContext,
    labels: &[S],
) -> Result<Vec<(String, TokenLogProbs<F>)>, ProviderError> {
    if labels.len() < 2 {
        return Err(ProviderError::InvalidRequest(format!("need at least 2 labels, got {}", labels.len())));
    }
    labels.iter().map(|l| Ok((l.as_ref().to_string(), provider.score_target(ctx, l.as_ref())?))).collect()
}

/// Log-softmax of label totals over the option set.
pub fn softmax_over_options<F: Scalar>(scored: &[(String, TokenLogProbs<F>)]) -> Vec<(String, F)> {
    let max = scored.iter().fold(F::neg_infinity(), |m, (_, t)| m.max(t.total));
    if !max.is_finite() {
        return scored.iter().map(|(l, _)| (l.clone(), F::nan())).collect();
    }
    let z = scored.iter().fold(F::zero(), |acc, (_, t)| acc + (t.total - max).exp());
    let log_z = max + z.ln();
    scored.iter().map(|(l, t)| (l.clone(), t.total - log_z)).collect()
}

/// Draws one candidate per temperature. Candidate ids are `{video_id}-s{index}`.
pub fn sample_candidates<F: Scalar>(
    provider: &dyn Provider<F>,
    ctx: &ScoringContext,
    video_id: &str,
    temperatures: &[f64],
    seed: u64,
) -> Result<Vec<SummaryCandidate>, ProviderError> {
    if temperatures.is_empty() {
        return Err(ProviderError::InvalidRequest("k must be at least 1".into()));
    }
    if let Some(t) = temperatures.iter().find(|t| !(**t >= 0.0)) {
        return Err(ProviderError::InvalidRequest(format!("negative temperature {t}")));
    }
    temperatures
        .iter()
        .enumerate()
        .map(|(i, &temperature)| {
            let text = provider.generate(ctx, temperature, seed.wrapping_add(i as u64))?;
            let text = text.trim().replace(MASK_TOKEN, "");
            if text.is_empty() {
                return Err(ProviderError::Malformed(format!("empty generation for sample {i}")));
            }
            Ok(SummaryCandidate {
                candidate_id: format!("{video_id}-s{i}"),
                video_id: video_id.to_string(),
                text,
                temperature,
                source: CandidateSource::Sampled,
                provenance: Some(provider.id().to_string()),
                label: None,
            })
        })
        .collect()
}
