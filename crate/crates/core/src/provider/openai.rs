//! Client for OpenAI-compatible `/v1/completions` endpoints that echo prompt
//! log-probabilities.
//!
//! A target is scored by sending `prompt + " " + target` with `echo: true`
//! and `logprobs: 1`, then keeping the echoed tokens whose character span
//! overlaps the target. Frames travel as base64 PNG data URLs in an `images`
//! array, the field multimodal completion servers accept alongside `prompt`.

use std::fs;

use base64::Engine;
use serde_json::{json, Value};

use super::template::TemplateStore;
use super::transport::Transport;
use super::{FrameSet, Provider, ProviderError, ScoringContext, Slot};
use crate::domain::{TokenLogProb, TokenLogProbs};
use crate::num::Scalar;

pub const COMPLETIONS_PATH: &str = "v1/completions";
pub const MAX_GENERATION_TOKENS: u32 = 256;

pub struct CompletionsProvider {
    transport: Box<dyn Transport>,
    model: String,
    path: String,
    templates: TemplateStore,
}

impl CompletionsProvider {
    pub fn new(transport: Box<dyn Transport>, model: impl Into<String>, templates: TemplateStore) -> Self {
        Self { transport, model: model.into(), path: COMPLETIONS_PATH.to_string(), templates }
    }

    /// Overrides the request path. Chat-style paths are refused: they cannot
    /// echo prompt log-probabilities.
    pub fn with_path(mut self, path: impl Into<String>) -> Result<Self, ProviderError> {
        let path = path.into();
        if path.contains("chat/completions") {
            return Err(ProviderError::EchoUnsupported(format!("{path} is a chat endpoint")));
        }
        self.path = path;
        Ok(self)
    }

    pub fn transport_kind(&self) -> &str {
        self.transport.kind()
    }

    /// Checks that the endpoint echoes prompt log-probabilities.
    pub fn probe(&self) -> Result<(), ProviderError> {
        let ctx = ScoringContext::new("probe").with_text(Slot::Instruction, "Say hello.");
        let body = self.request("Say hello.", &ctx, " hello")?;
        let resp = self.send(&body)?;
        token_table(&resp).map(|_| ())
    }

    fn images(frames: Option<&FrameSet>) -> Result<Vec<String>, ProviderError> {
        let Some(frames) = frames else { return Ok(Vec::new()) };
        frames
            .paths
            .iter()
            .map(|p| {
                let bytes = fs::read(p).map_err(|e| ProviderError::Io(format!("{p}: {e}")))?;
                Ok(format!("data:image/png;base64,{}", base64::engine::general_purpose::STANDARD.encode(bytes)))
            })
            .collect()
    }

    fn request(&self, prompt: &str, ctx: &ScoringContext, suffix: &str) -> Result<Value, ProviderError> {
        Ok(json!({
            "model": self.model,
            "prompt": format!("{prompt}{suffix}"),
            "echo": true,
            "logprobs": 1,
            "max_tokens": 1,
            "temperature": 0,
            "images": Self::images(ctx.frames.as_ref())?,
        }))
    }

    fn send(&self, body: &Value) -> Result<Value, ProviderError> {
        let raw = self.transport.post(&self.path, body)?;
        serde_json::from_str(&raw).map_err(|e| ProviderError::Malformed(format!("response is not json: {e}")))
    }
}

struct TokenTable {
    tokens: Vec<String>,
    logprobs: Vec<Option<f64>>,
    offsets: Vec<usize>,
}

fn token_table(resp: &Value) -> Result<TokenTable, ProviderError> {
    let lp = resp
        .pointer("/choices/0/logprobs")
        .filter(|v| !v.is_null())
        .ok_or_else(|| ProviderError::EchoUnsupported("response carries no logprobs".into()))?;
    let arr = |key: &str| {
        lp.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| ProviderError::EchoUnsupported(format!("response carries no {key}")))
    };
    let tokens = arr("tokens")?
        .iter()
        .map(|t| t.as_str().map(str::to_owned).ok_or_else(|| ProviderError::Malformed("token is not a string".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let logprobs: Vec<Option<f64>> = arr("token_logprobs")?.iter().map(Value::as_f64).collect();
    let offsets = arr("text_offset")?
        .iter()
        .map(|o| o.as_u64().map(|o| o as usize).ok_or_else(|| ProviderError::Malformed("bad text_offset".into())))
        .collect::<Result<Vec<_>, _>>()?;
    if tokens.len() != logprobs.len() || tokens.len() != offsets.len() {
        return Err(ProviderError::Malformed("tokens, token_logprobs and text_offset differ in length".into()));
    }
    Ok(TokenTable { tokens, logprobs, offsets })
}

/// Keeps tokens overlapping the character range `[start, end)`.
fn slice_target<F: Scalar>(table: &TokenTable, start: usize, end: usize) -> Result<TokenLogProbs<F>, ProviderError> {
    let mut out = Vec::new();
    for i in 0..table.tokens.len() {
        let lo = table.offsets[i];
        let hi = table.offsets.get(i + 1).copied().unwrap_or(lo + table.tokens[i].chars().count());
        if lo >= end || hi <= start {
            continue;
        }
        let lp = table.logprobs[i].ok_or_else(|| ProviderError::Malformed(format!("token {i} has no logprob")))?;
        out.push(TokenLogProb { text: table.tokens[i].clone(), logprob: F::lit(lp.min(0.0)) });
    }
    if out.is_empty() {
        return Err(ProviderError::Malformed("no echoed tokens cover the target".into()));
    }
    Ok(TokenLogProbs::from_tokens(out))
}

impl<F: Scalar> Provider<F> for CompletionsProvider {
    fn id(&self) -> &str {
        &self.model
    }

    fn score_target(&self, ctx: &ScoringContext, target: &str) -> Result<TokenLogProbs<F>, ProviderError> {
        ctx.check()?;
        if target.trim().is_empty() {
            return Err(ProviderError::InvalidRequest("empty target".into()));
        }
        let prompt = self.templates.get(&ctx.template_id)?.render(ctx);
        let suffix = format!(" {target}");
        let body = self.request(&prompt, ctx, &suffix)?;
        let table = token_table(&self.send(&body)?)?;
        let start = prompt.chars().count() + 1;
        slice_target(&table, start, start + target.chars().count())
    }

    fn generate(&self, ctx: &ScoringContext, temperature: f64, seed: u64) -> Result<String, ProviderError> {
        ctx.check()?;
        let prompt = self.templates.get(&ctx.template_id)?.render(ctx);
        let body = json!({
            "model": self.model,
            "prompt": prompt,
            "max_tokens": MAX_GENERATION_TOKENS,
            "temperature": temperature,
            "seed": seed,
            "images": Self::images(ctx.frames.as_ref())?,
        });
        let resp = self.send(&body)?;
        resp.pointer("/choices/0/text")
            .and_then(Value::as_str)
            .map(str::to_owned)
            .ok_or_else(|| ProviderError::GenerationUnavailable("response has no choices[0].text".into()))
    }
}
