//! Core data model: manifests, candidates, tasks, masked inputs, score cards
//! and study response records, plus their validation.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::num::{self, Scalar};

/// Literal placeholder substituted for masked keywords. Reserved: raw input
/// text containing it is rejected.
pub const MASK_TOKEN: &str = "<MASK>";

/// Absolute tolerance for the ledger-sum identities on a [`ScoreCard`].
pub const LEDGER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VideoManifest {
    pub video_id: String,
    /// Frame image files, relative to the video directory unless absolute.
    pub frame_paths: Vec<String>,
    pub frame_count: usize,
    pub duration_s: f64,
    pub dataset_tag: String,
    /// Author-provided keywords, unioned into the text mask when the preset asks for it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub author_keywords: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    Sampled,
    Cot,
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryCandidate {
    pub candidate_id: String,
    pub video_id: String,
    pub text: String,
    pub temperature: f64,
    pub source: CandidateSource,
    /// Provider or transport that produced the text, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// Free-form display tag ("naive", "tldr", "abstract") used to highlight points in plots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerOption {
    pub label: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInstance {
    pub task_id: String,
    pub video_id: String,
    pub question: String,
    pub options: Vec<AnswerOption>,
    pub truth_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskedSpan {
    /// Byte offsets into the unmasked text.
    pub start: usize,
    pub end: usize,
    pub original: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskedText {
    pub text: String,
    pub masked_spans: Vec<MaskedSpan>,
    pub keyword_set_id: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskStrategy {
    /// Keep a random 1/16-area sub-rectangle of every frame, discard the rest.
    CropRetain,
    /// Black out a random 1/16-area sub-rectangle, keep the rest.
    CropOcclude,
    /// Black out OCR bounding boxes of keyword matches.
    OcrRegions,
    None,
}

impl FromStr for MaskStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "crop_retain" => Ok(Self::CropRetain),
            "crop_occlude" => Ok(Self::CropOcclude),
            "ocr_regions" => Ok(Self::OcrRegions),
            "none" => Ok(Self::None),
            other => Err(format!("unknown mask strategy {other:?}")),
        }
    }
}

/// Axis-aligned rectangle in normalized frame coordinates, `[0,1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn is_inside_unit_square(&self) -> bool {
        [self.x0, self.y0, self.x1, self.y1].iter().all(|v| (0.0..=1.0).contains(v))
            && self.x0 < self.x1
            && self.y0 < self.y1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskPlan {
    pub video_id: String,
    pub strategy: MaskStrategy,
    pub seed: u64,
    /// One entry per manifest frame.
    pub per_frame_regions: Vec<Vec<Rect>>,
}

/// One scored continuation token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TokenLogProb<F> {
    pub text: String,
    #[serde(with = "float_tag")]
    pub logprob: F,
}

/// Teacher-forced log-probabilities of a target string, one entry per model token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TokenLogProbs<F> {
    pub tokens: Vec<TokenLogProb<F>>,
    #[serde(with = "float_tag")]
    pub total: F,
}

impl<F: Scalar> TokenLogProbs<F> {
    pub fn from_tokens(tokens: Vec<TokenLogProb<F>>) -> Self {
        let values: Vec<F> = tokens.iter().map(|t| t.logprob).collect();
        let total = num::sum(&values);
        Self { tokens, total }
    }

    pub fn empty() -> Self {
        Self { tokens: Vec::new(), total: F::zero() }
    }

    pub fn logprobs(&self) -> Vec<F> {
        self.tokens.iter().map(|t| t.logprob).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.total.is_finite() && self.tokens.iter().all(|t| t.logprob.is_finite())
    }

    /// Concatenates ledgers; the total is recomputed over the joined tokens.
    pub fn concat(parts: impl IntoIterator<Item = Self>) -> Self {
        Self::from_tokens(parts.into_iter().flat_map(|p| p.tokens).collect())
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// The four teacher-forced calls behind one card.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TokenLedger<F> {
    /// Summary given frames and masked summary.
    pub grounding_with_video: TokenLogProbs<F>,
    /// Summary given masked summary only.
    pub grounding_text_only: TokenLogProbs<F>,
    /// Truth label given masked frames, summary and question.
    pub utility_with_summary: TokenLogProbs<F>,
    /// Truth label given masked frames and question.
    pub utility_without_summary: TokenLogProbs<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CardStatus {
    Valid,
    Invalid { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct ScoreCard<F> {
    pub candidate_id: String,
    pub video_id: String,
    /// Nats.
    #[serde(with = "float_tag")]
    pub grounding: F,
    /// Nats.
    #[serde(with = "float_tag")]
    pub utility: F,
    pub token_ledger: TokenLedger<F>,
    pub provider_id: String,
    pub grounding_template: String,
    pub utility_template: String,
    #[serde(flatten)]
    pub status: CardStatus,
}

impl<F: Scalar> ScoreCard<F> {
    /// Builds a card from its ledger. Scores are the ledger-sum differences; the
    /// card is invalid when any entry is non-finite.
    pub fn from_ledger(
        candidate_id: impl Into<String>,
        video_id: impl Into<String>,
        token_ledger: TokenLedger<F>,
        provider_id: impl Into<String>,
        grounding_template: impl Into<String>,
        utility_template: impl Into<String>,
    ) -> Self {
        let l = &token_ledger;
        let grounding = l.grounding_with_video.total - l.grounding_text_only.total;
        let utility = l.utility_with_summary.total - l.utility_without_summary.total;
        let bad: Vec<&str> = [
            ("grounding_with_video", &l.grounding_with_video),
            ("grounding_text_only", &l.grounding_text_only),
            ("utility_with_summary", &l.utility_with_summary),
            ("utility_without_summary", &l.utility_without_summary),
        ]
        .into_iter()
        .filter(|(_, v)| !v.all_finite())
        .map(|(name, _)| name)
        .collect();
        let status = if bad.is_empty() {
            CardStatus::Valid
        } else {
            CardStatus::Invalid { reason: format!("non-finite logprob in {}", bad.join(", ")) }
        };
        Self {
            candidate_id: candidate_id.into(),
            video_id: video_id.into(),
            grounding,
            utility,
            token_ledger,
            provider_id: provider_id.into(),
            grounding_template: grounding_template.into(),
            utility_template: utility_template.into(),
            status,
        }
    }

    pub fn invalid(
        candidate_id: impl Into<String>,
        video_id: impl Into<String>,
        provider_id: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let empty = TokenLogProbs::empty();
        Self {
            candidate_id: candidate_id.into(),
            video_id: video_id.into(),
            grounding: F::nan(),
            utility: F::nan(),
            token_ledger: TokenLedger {
                grounding_with_video: empty.clone(),
                grounding_text_only: empty.clone(),
                utility_with_summary: empty.clone(),
                utility_without_summary: empty,
            },
            provider_id: provider_id.into(),
            grounding_template: String::new(),
            utility_template: String::new(),
            status: CardStatus::Invalid { reason: reason.into() },
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status == CardStatus::Valid
    }

    /// Mean per-token grounding difference; a length-normalized diagnostic.
    pub fn grounding_per_token(&self) -> F {
        let n = self.token_ledger.grounding_with_video.len();
        if n == 0 {
            return F::nan();
        }
        self.grounding / F::from_usize_lossy(n)
    }

    pub fn utility_per_token(&self) -> F {
        let n = self.token_ledger.utility_with_summary.len();
        if n == 0 {
            return F::nan();
        }
        self.utility / F::from_usize_lossy(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum Condition {
    VideoOnly,
    Naive,
    MaxG,
    MaxU,
    Cot,
}

impl Condition {
    pub const ALL: [Condition; 5] =
        [Condition::VideoOnly, Condition::Naive, Condition::MaxG, Condition::MaxU, Condition::Cot];

    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::VideoOnly => "video_only",
            Condition::Naive => "naive",
            Condition::MaxU => "max_u",
            Condition::MaxG => "max_g",
            Condition::Cot => "cot",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TryFrom<String> for Condition {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Condition> for &'static str {
    fn from(c: Condition) -> Self {
        c.as_str()
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Condition::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown condition tag {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub participant_id: String,
    pub condition: Condition,
    pub stimulus_id: String,
    pub correct: bool,
    pub response_time_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    CountMismatch,
    EmptyFrames,
    NegativeDuration,
    UnreadableFrame,
    EmptyText,
    ReservedToken,
    NegativeTemperature,
    TooFewOptions,
    DuplicateLabel,
    UnknownTruthLabel,
    LedgerMismatch,
    NonFiniteLedger,
    PositiveLogprob,
    NonPositiveResponseTime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl Violation {
    fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Self { kind, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Outcome of a validation pass. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Set when the score card must not take part in selection.
    pub fn invalid_card(&self) -> bool {
        self.has(ViolationKind::NonFiniteLedger)
    }

    fn push(&mut self, kind: ViolationKind, message: impl Into<String>) {
        self.violations.push(Violation::new(kind, message));
    }
}

/// Checks manifest invariants. When `frames_root` is given every frame
/// reference is also opened; an unreadable file becomes a violation.
pub fn validate_manifest(manifest: &VideoManifest, frames_root: Option<&Path>) -> ValidationReport {
    let mut report = ValidationReport::default();
    if manifest.frame_paths.is_empty() {
        report.push(ViolationKind::EmptyFrames, "frame_paths is empty");
    }
    if manifest.frame_count != manifest.frame_paths.len() {
        report.push(
            ViolationKind::CountMismatch,
            format!(
                "count mismatch: frame_count={} but {} frame paths",
                manifest.frame_count,
                manifest.frame_paths.len()
            ),
        );
    }
    if !(manifest.duration_s >= 0.0) {
        report.push(ViolationKind::NegativeDuration, format!("negative duration: {}", manifest.duration_s));
    }
    if let Some(root) = frames_root {
        for rel in &manifest.frame_paths {
            let path = root.join(rel);
            if let Err(e) = std::fs::File::open(&path) {
                report.push(ViolationKind::UnreadableFrame, format!("unreadable frame {}: {e}", path.display()));
            }
        }
    }
    report
}

pub fn validate_candidate(candidate: &SummaryCandidate) -> ValidationReport {
    let mut report = ValidationReport::default();
    if candidate.text.trim().is_empty() {
        report.push(ViolationKind::EmptyText, "candidate text is empty");
    }
    if candidate.text.contains(MASK_TOKEN) {
        report.push(ViolationKind::ReservedToken, format!("candidate text contains {MASK_TOKEN}"));
    }
    if !(candidate.temperature >= 0.0) {
        report.push(ViolationKind::NegativeTemperature, format!("negative temperature {}", candidate.temperature));
    }
    report
}

pub fn validate_task(task: &TaskInstance) -> ValidationReport {
    let mut report = ValidationReport::default();
    if task.options.len() < 2 {
        report.push(
            ViolationKind::TooFewOptions,
            format!("task {} has {} options, need at least 2", task.task_id, task.options.len()),
        );
    }
    let mut seen = HashSet::new();
    for opt in &task.options {
        if !seen.insert(opt.label.as_str()) {
            report.push(ViolationKind::DuplicateLabel, format!("duplicate option label {:?}", opt.label));
        }
    }
    if !seen.contains(task.truth_label.as_str()) {
        report.push(
            ViolationKind::UnknownTruthLabel,
            format!("truth label {:?} is not an option label", task.truth_label),
        );
    }
    report
}

pub fn validate_response(record: &ResponseRecord) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !(record.response_time_s > 0.0) {
        report.push(
            ViolationKind::NonPositiveResponseTime,
            format!("response_time_s must be positive, got {}", record.response_time_s),
        );
    }
    report
}

/// Checks finiteness, the per-ledger totals, and that both scores equal their
/// ledger-sum differences.
pub fn validate_scorecard<F: Scalar>(card: &ScoreCard<F>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let l = &card.token_ledger;
    let ledgers = [
        ("grounding_with_video", &l.grounding_with_video),
        ("grounding_text_only", &l.grounding_text_only),
        ("utility_with_summary", &l.utility_with_summary),
        ("utility_without_summary", &l.utility_without_summary),
    ];
    let mut finite = true;
    for (name, ledger) in ledgers {
        if !ledger.all_finite() {
            finite = false;
            report.push(ViolationKind::NonFiniteLedger, format!("invalid card: non-finite logprob in {name}"));
            continue;
        }
        if ledger.tokens.iter().any(|t| t.logprob > F::zero()) {
            report.push(ViolationKind::PositiveLogprob, format!("positive logprob in {name}"));
        }
        let values = ledger.logprobs();
        if !close(ledger.total, num::sum(&values), &values) {
            report.push(ViolationKind::LedgerMismatch, format!("{name}: total != sum of token logprobs"));
        }
    }
    if !finite {
        return report;
    }
    let (a, b) = (l.grounding_with_video.logprobs(), l.grounding_text_only.logprobs());
    let expected = num::sum(&a) - num::sum(&b);
    if !close(card.grounding, expected, &[a, b].concat()) {
        report.push(
            ViolationKind::LedgerMismatch,
            format!("grounding {} != ledger difference {}", card.grounding, expected),
        );
    }
    let (c, d) = (l.utility_with_summary.logprobs(), l.utility_without_summary.logprobs());
    let expected = num::sum(&c) - num::sum(&d);
    if !close(card.utility, expected, &[c, d].concat()) {
        report
            .push(ViolationKind::LedgerMismatch, format!("utility {} != ledger difference {}", card.utility, expected));
    }
    report
}

// 1e-9 absolute, widened only when the scalar type cannot resolve it.
fn close<F: Scalar>(a: F, b: F, terms: &[F]) -> bool {
    let scale = terms.iter().fold(F::one(), |acc, t| acc + t.abs());
    let tol = F::lit(LEDGER_TOLERANCE).max(F::epsilon() * scale * F::lit(8.0));
    (a - b).abs() <= tol
}

/// Serde adapter writing non-finite floats as the strings `"inf"`, `"-inf"`, `"NaN"`
/// so invalid cards survive a JSON round trip.
pub mod float_tag {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::num::Scalar;

    pub fn serialize<F: Scalar, S: Serializer>(v: &F, s: S) -> Result<S::Ok, S::Error> {
        let x = v.to_f64_lossy();
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("NaN")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Tag(String),
    }

    pub fn deserialize<'de, F: Scalar, D: Deserializer<'de>>(d: D) -> Result<F, D::Error> {
        let x = match Repr::deserialize(d)? {
            Repr::Num(x) => x,
            Repr::Tag(t) => match t.as_str() {
                "NaN" => f64::NAN,
                "inf" => f64::INFINITY,
                "-inf" => f64::NEG_INFINITY,
                other => return Err(serde::de::Error::custom(format!("bad float tag {other:?}"))),
            },
        };
        F::from_f64(x).ok_or_else(|| serde::de::Error::custom("float out of range"))
    }
}
