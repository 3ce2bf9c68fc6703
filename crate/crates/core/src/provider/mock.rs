//! Exact provider backed by a finite joint distribution over (video, summary, label).
//!
//! Contexts are decoded back into events on the joint:
//!
//! * unmasked frames of video `v` fix `V = v`;
//! * masked frames restrict `V` to the videos whose masked rendering equals
//!   that of `v` (no restriction when the video mask is uninformative);
//! * a masked-text block restricts `T` the same way through the text mask;
//! * a summary block fixes `T`.
//!
//! Question, option and instruction blocks carry no information here. The
//! target is a summary (predict `T`) or a label (predict `Y`); its per-token
//! log-probabilities telescope over word prefixes so the total is exactly the
//! log of the conditional.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Provider, ProviderError, ScoringContext, Slot};
use crate::domain::{TokenLogProb, TokenLogProbs};
use crate::masking::counter_uniform;
use crate::num::Scalar;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// How a variable looks after masking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskChannel {
    /// The masked variable is independent of everything else.
    Uninformative,
    /// Deterministic masked rendering of each value, in value order.
    Map(Vec<String>),
}

impl MaskChannel {
    /// Value indices compatible with observing the masked rendering of `observed`.
    fn preimage(&self, n: usize, observed: usize) -> Vec<usize> {
        match self {
            MaskChannel::Uninformative => (0..n).collect(),
            MaskChannel::Map(m) => (0..n).filter(|&i| m[i] == m[observed]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointSpec<F> {
    pub videos: Vec<String>,
    pub summaries: Vec<String>,
    pub labels: Vec<String>,
    /// Dense table indexed `(v * |T| + t) * |Y| + y`.
    pub table: Vec<F>,
    pub video_mask: MaskChannel,
    pub text_mask: MaskChannel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    video: String,
    summary: String,
    label: String,
    p: f64,
}

/// On-disk form: sparse entries, absent cells are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpecFile {
    videos: Vec<String>,
    summaries: Vec<String>,
    labels: Vec<String>,
    video_mask: MaskChannel,
    text_mask: MaskChannel,
    entries: Vec<Entry>,
}

fn mock_err(msg: impl Into<String>) -> ProviderError {
    ProviderError::Mock(msg.into())
}

fn position(values: &[String], v: &str, what: &str) -> Result<usize, ProviderError> {
    values.iter().position(|x| x == v).ok_or_else(|| mock_err(format!("unknown {what} {v:?}")))
}

impl<F: Scalar> JointSpec<F> {
    pub fn new(
        videos: Vec<String>,
        summaries: Vec<String>,
        labels: Vec<String>,
        table: Vec<F>,
        video_mask: MaskChannel,
        text_mask: MaskChannel,
    ) -> Result<Self, ProviderError> {
        let spec = Self { videos, summaries, labels, table, video_mask, text_mask };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), ProviderError> {
        let (nv, nt, ny) = self.dims();
        if nv == 0 || nt == 0 || ny == 0 {
            return Err(mock_err("every variable needs at least one value"));
        }
        for (name, vals) in [("video", &self.videos), ("summary", &self.summaries), ("label", &self.labels)] {
            let mut sorted: Vec<_> = vals.iter().collect();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != vals.len() {
                return Err(mock_err(format!("duplicate {name} values")));
            }
        }
        if self.summaries.iter().any(|s| self.labels.contains(s)) {
            return Err(mock_err("summaries and labels must be disjoint"));
        }
        if self.table.len() != nv * nt * ny {
            return Err(mock_err(format!("table has {} cells, expected {}", self.table.len(), nv * nt * ny)));
        }
        if self.table.iter().any(|p| !(*p >= F::zero()) || !p.is_finite()) {
            return Err(mock_err("table entries must be finite and nonnegative"));
        }
        let total = crate::num::sum(&self.table).to_f64_lossy();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(mock_err(format!("table sums to {total}, not 1")));
        }
        for (name, ch, n) in [("video", &self.video_mask, nv), ("text", &self.text_mask, nt)] {
            if let MaskChannel::Map(m) = ch {
                if m.len() != n {
                    return Err(mock_err(format!("{name} mask map has {} entries for {n} values", m.len())));
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.videos.len(), self.summaries.len(), self.labels.len())
    }

    pub fn p(&self, v: usize, t: usize, y: usize) -> F {
        let (_, nt, ny) = self.dims();
        self.table[(v * nt + t) * ny + y]
    }

    /// Masked rendering of summary `t`, or `None` when the text mask is uninformative.
    pub fn masked_summary(&self, t: usize) -> Option<&str> {
        match &self.text_mask {
            MaskChannel::Uninformative => None,
            MaskChannel::Map(m) => Some(&m[t]),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProviderError> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| mock_err(format!("joint spec: {e}")))?;
        let (nt, ny) = (file.summaries.len(), file.labels.len());
        let mut table = vec![F::zero(); file.videos.len() * nt * ny];
        for e in &file.entries {
            let v = position(&file.videos, &e.video, "video")?;
            let t = position(&file.summaries, &e.summary, "summary")?;
            let y = position(&file.labels, &e.label, "label")?;
            table[(v * nt + t) * ny + y] = table[(v * nt + t) * ny + y] + F::lit(e.p);
        }
        Self::new(file.videos, file.summaries, file.labels, table, file.video_mask, file.text_mask)
    }

    pub fn load(path: &Path) -> Result<Self, ProviderError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProviderError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let (nv, nt, ny) = self.dims();
        let mut entries = Vec::new();
        for v in 0..nv {
            for t in 0..nt {
                for y in 0..ny {
                    let p = self.p(v, t, y);
                    if p > F::zero() {
                        entries.push(Entry {
                            video: self.videos[v].clone(),
                            summary: self.summaries[t].clone(),
                            label: self.labels[y].clone(),
                            p: p.to_f64_lossy(),
                        });
                    }
                }
            }
        }
        let file = SpecFile {
            videos: self.videos.clone(),
            summaries: self.summaries.clone(),
            labels: self.labels.clone(),
            video_mask: self.video_mask.clone(),
            text_mask: self.text_mask.clone(),
            entries,
        };
        serde_json::to_string_pretty(&file).expect("spec serializes")
    }
}

/// The event a context conditions on.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Event {
    videos: Vec<usize>,
    summaries: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Summary,
    Label,
}

pub struct JointProvider<F> {
    spec: JointSpec<F>,
    id: String,
}

impl<F: Scalar> JointProvider<F> {
    pub fn new(spec: JointSpec<F>) -> Self {
        Self { spec, id: "mock-joint".to_string() }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn spec(&self) -> &JointSpec<F> {
        &self.spec
    }

    fn decode(&self, ctx: &ScoringContext) -> Result<Event, ProviderError> {
        ctx.check()?;
        let s = &self.spec;
        let (nv, nt, _) = s.dims();
        let videos = match &ctx.frames {
            None => (0..nv).collect(),
            Some(f) => {
                let v = position(&s.videos, &f.video_id, "video")?;
                if f.masked {
                    s.video_mask.preimage(nv, v)
                } else {
                    vec![v]
                }
            }
        };
        let mut summaries: Vec<usize> = (0..nt).collect();
        if let Some(masked) = ctx.block(Slot::MaskedText) {
            if let MaskChannel::Map(m) = &s.text_mask {
                summaries.retain(|&t| m[t] == masked);
                if summaries.is_empty() {
                    return Err(mock_err(format!("unknown masked text {masked:?}")));
                }
            }
        }
        if let Some(summary) = ctx.block(Slot::Summary) {
            let t = position(&s.summaries, summary, "summary")?;
            summaries.retain(|&x| x == t);
        }
        Ok(Event { videos, summaries })
    }

    /// Conditional distribution of the predicted variable given `event`.
    fn conditional(&self, event: &Event, target: Target) -> Result<Vec<F>, ProviderError> {
        let s = &self.spec;
        let (_, nt, ny) = s.dims();
        let mut mass = vec![F::zero(); if target == Target::Summary { nt } else { ny }];
        for &v in &event.videos {
            for &t in &event.summaries {
                for y in 0..ny {
                    let i = if target == Target::Summary { t } else { y };
                    mass[i] = mass[i] + s.p(v, t, y);
                }
            }
        }
        let z = crate::num::sum(&mass);
        if !(z > F::zero()) {
            return Err(mock_err("context has zero probability under the joint"));
        }
        Ok(mass.into_iter().map(|m| m / z).collect())
    }

    fn target_kind(&self, target: &str) -> Target {
        if self.spec.labels.iter().any(|l| l == target) {
            Target::Label
        } else {
            Target::Summary
        }
    }
}

impl<F: Scalar> Provider<F> for JointProvider<F> {
    fn id(&self) -> &str {
        &self.id
    }

    fn score_target(&self, ctx: &ScoringContext, target: &str) -> Result<TokenLogProbs<F>, ProviderError> {
        let words: Vec<&str> = target.split_whitespace().collect();
        if words.is_empty() {
            return Err(ProviderError::InvalidRequest("empty target".into()));
        }
        let kind = self.target_kind(target);
        let probs = self.conditional(&self.decode(ctx)?, kind)?;
        let values = if kind == Target::Label { &self.spec.labels } else { &self.spec.summaries };
        let split: Vec<Vec<&str>> = values.iter().map(|v| v.split_whitespace().collect()).collect();

        let mut tokens = Vec::with_capacity(words.len());
        let mut prev = F::one();
        for i in 1..=words.len() {
            let last = i == words.len();
            let mass: Vec<F> = split
                .iter()
                .zip(&probs)
                .filter(|(w, _)| if last { **w == words } else { w.len() >= i && w[..i] == words[..i] })
                .map(|(_, p)| *p)
                .collect();
            let mass = crate::num::sum(&mass);
            let logprob = if prev > F::zero() { (mass / prev).ln().min(F::zero()) } else { F::neg_infinity() };
            tokens.push(TokenLogProb { text: words[i - 1].to_string(), logprob });
            prev = mass;
        }
        Ok(TokenLogProbs::from_tokens(tokens))
    }

    fn generate(&self, ctx: &ScoringContext, temperature: f64, seed: u64) -> Result<String, ProviderError> {
        let probs = self.conditional(&self.decode(ctx)?, Target::Summary)?;
        let pick = if temperature == 0.0 {
            // first maximum wins
            let mut best = 0;
            for (i, p) in probs.iter().enumerate() {
                if *p > probs[best] {
                    best = i;
                }
            }
            best
        } else {
            let inv = 1.0 / temperature;
            let w: Vec<f64> = probs.iter().map(|p| p.to_f64_lossy().powf(inv)).collect();
            let z: f64 = w.iter().sum();
            let mut u = counter_uniform(seed, 0) * z;
            let mut pick = w.iter().rposition(|x| *x > 0.0).unwrap_or(0);
            for (i, x) in w.iter().enumerate() {
                if *x > 0.0 && u < *x {
                    pick = i;
                    break;
                }
                u -= x;
            }
            pick
        };
        Ok(self.spec.summaries[pick].clone())
    }
}

/// Summaries grouped by video, most probable first; handy for building fixtures.
pub fn summaries_by_video<F: Scalar>(spec: &JointSpec<F>) -> BTreeMap<String, Vec<String>> {
    let (nv, nt, ny) = spec.dims();
    let mut out = BTreeMap::new();
    for v in 0..nv {
        let mut scored: Vec<(F, usize)> = (0..nt)
            .map(|t| {
                let row: Vec<F> = (0..ny).map(|y| spec.p(v, t, y)).collect();
                (crate::num::sum(&row), t)
            })
            .filter(|(p, _)| *p > F::zero())
            .collect();
        scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        out.insert(spec.videos[v].clone(), scored.into_iter().map(|(_, t)| spec.summaries[t].clone()).collect());
    }
    out
}
