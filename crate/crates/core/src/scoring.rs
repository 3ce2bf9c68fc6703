//! Grounding and utility scores from four teacher-forced calls per candidate.

use std::io::Write;

use rayon::prelude::*;

use crate::domain::{
    validate_candidate, validate_task, MaskPlan, MaskedText, ScoreCard, SummaryCandidate, TaskInstance, TokenLedger,
    TokenLogProbs, VideoManifest, MASK_TOKEN,
};
use crate::num::Scalar;
use crate::provider::{FrameSet, Provider, ProviderError, ScoringContext, Slot};

pub const GROUNDING_TEMPLATE: &str = "grounding-v1";
pub const UTILITY_TEMPLATE: &str = "utility-v1";

/// What is forced after the answer cue in the utility calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerForm {
    /// `B`
    #[default]
    Label,
    /// `(B) option text`
    LabelWithText,
}

/// One score with both sides of its difference.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedScore<F> {
    pub score: F,
    pub with: TokenLogProbs<F>,
    pub without: TokenLogProbs<F>,
}

impl<F: Scalar> PairedScore<F> {
    fn new(with: TokenLogProbs<F>, without: TokenLogProbs<F>) -> Self {
        Self { score: with.total - without.total, with, without }
    }

    pub fn is_finite(&self) -> bool {
        self.with.all_finite() && self.without.all_finite()
    }
}

pub fn render_options(task: &TaskInstance) -> String {
    task.options.iter().map(|o| format!("({}) {}", o.label, o.text)).collect::<Vec<_>>().join("\n")
}

fn answer_target(task: &TaskInstance, form: AnswerForm) -> String {
    match form {
        AnswerForm::Label => task.truth_label.clone(),
        AnswerForm::LabelWithText => {
            let text = task.options.iter().find(|o| o.label == task.truth_label).map_or("", |o| o.text.as_str());
            format!("({}) {text}", task.truth_label)
        }
    }
}

/// `ln P(T | V, T_masked) - ln P(T | T_masked)`, with unmasked frames in the first call only.
pub fn grounding_score<F: Scalar>(
    provider: &dyn Provider<F>,
    candidate: &SummaryCandidate,
    frames: &FrameSet,
    masked: &MaskedText,
    template_id: &str,
) -> Result<PairedScore<F>, ProviderError> {
    let text_only = ScoringContext::new(template_id).with_text(Slot::MaskedText, masked.text.clone());
    let with_video = text_only.clone().with_frames(frames.clone());
    let with = provider.score_target(&with_video, &candidate.text)?;
    let without = provider.score_target(&text_only, &candidate.text)?;
    Ok(PairedScore::new(with, without))
}

/// `ln P(Y | T, V_masked) - ln P(Y | V_masked)`, summed over the video's tasks.
pub fn utility_score<F: Scalar>(
    provider: &dyn Provider<F>,
    candidate: &SummaryCandidate,
    masked_frames: &FrameSet,
    tasks: &[TaskInstance],
    template_id: &str,
    form: AnswerForm,
) -> Result<PairedScore<F>, ProviderError> {
    if tasks.is_empty() {
        return Err(ProviderError::InvalidRequest("utility needs at least one task".into()));
    }
    let mut with = Vec::with_capacity(tasks.len());
    let mut without = Vec::with_capacity(tasks.len());
    for task in tasks {
        let base = ScoringContext::new(template_id)
            .with_frames(masked_frames.clone())
            .with_text(Slot::Question, task.question.clone())
            .with_text(Slot::Options, render_options(task));
        let target = answer_target(task, form);
        with.push(provider.score_target(&base.clone().with_text(Slot::Summary, candidate.text.clone()), &target)?);
        without.push(provider.score_target(&base, &target)?);
    }
    Ok(PairedScore::new(TokenLogProbs::concat(with), TokenLogProbs::concat(without)))
}

/// Rebuilds the source text of a masked text from its recorded spans.
pub fn unmask(masked: &MaskedText) -> Option<String> {
    let mut out = String::with_capacity(masked.text.len());
    let mut rest = masked.text.as_str();
    for span in &masked.masked_spans {
        let at = rest.find(MASK_TOKEN)?;
        out.push_str(&rest[..at]);
        out.push_str(&span.original);
        rest = &rest[at + MASK_TOKEN.len()..];
    }
    if rest.contains(MASK_TOKEN) {
        return None;
    }
    out.push_str(rest);
    Some(out)
}

/// Everything needed to score the candidates of one video.
#[derive(Debug, Clone)]
pub struct ScoringJob {
    pub manifest: VideoManifest,
    pub frames: FrameSet,
    pub masked_frames: FrameSet,
    pub plan: MaskPlan,
    pub candidates: Vec<SummaryCandidate>,
    pub masked_texts: Vec<MaskedText>,
    pub tasks: Vec<TaskInstance>,
    pub grounding_template: String,
    pub utility_template: String,
    pub answer_form: AnswerForm,
}

#[derive(Debug, thiserror::Error)]
pub enum ScoringError {
    #[error("invalid scoring job: {0}")]
    InvalidJob(String),
    #[error(transparent)]
    Provider(#[from] ProviderError),
    #[error("every candidate of {video_id} failed; first error: {first}")]
    AllFailed { video_id: String, first: String },
    #[error("worker pool: {0}")]
    Pool(String),
}

impl ScoringJob {
    pub fn validate(&self) -> Result<(), ScoringError> {
        let bad = |m: String| Err(ScoringError::InvalidJob(m));
        let vid = &self.manifest.video_id;
        if self.candidates.is_empty() {
            return bad(format!("{vid}: no candidates"));
        }
        if self.masked_texts.len() != self.candidates.len() {
            return bad(format!(
                "{vid}: {} masked texts for {} candidates",
                self.masked_texts.len(),
                self.candidates.len()
            ));
        }
        for (c, m) in self.candidates.iter().zip(&self.masked_texts) {
            if let Some(v) = validate_candidate(c).violations.first() {
                return bad(format!("{}: {}", c.candidate_id, v.message));
            }
            if &c.video_id != vid {
                return bad(format!("{} belongs to {}, not {vid}", c.candidate_id, c.video_id));
            }
            if unmask(m).as_deref() != Some(c.text.as_str()) {
                return bad(format!("{}: masked text is not derived from the candidate text", c.candidate_id));
            }
        }
        if self.tasks.is_empty() {
            return bad(format!("{vid}: no tasks"));
        }
        for t in &self.tasks {
            if let Some(v) = validate_task(t).violations.first() {
                return bad(format!("{}: {}", t.task_id, v.message));
            }
        }
        if &self.plan.video_id != vid || self.plan.per_frame_regions.len() != self.manifest.frame_count {
            return bad(format!("{vid}: mask plan does not match the manifest"));
        }
        if !self.masked_frames.masked || self.frames.masked {
            return bad(format!("{vid}: frame sets have the wrong mask flags"));
        }
        Ok(())
    }

    fn score_one<F: Scalar>(&self, provider: &dyn Provider<F>, i: usize) -> Result<ScoreCard<F>, ProviderError> {
        let c = &self.candidates[i];
        let g = grounding_score(provider, c, &self.frames, &self.masked_texts[i], &self.grounding_template)?;
        let u = utility_score(provider, c, &self.masked_frames, &self.tasks, &self.utility_template, self.answer_form)?;
        let ledger = TokenLedger {
            grounding_with_video: g.with,
            grounding_text_only: g.without,
            utility_with_summary: u.with,
            utility_without_summary: u.without,
        };
        Ok(ScoreCard::from_ledger(
            c.candidate_id.clone(),
            c.video_id.clone(),
            ledger,
            provider.id(),
            self.grounding_template.clone(),
            self.utility_template.clone(),
        ))
    }
}

/// Scores every candidate with at most `max_inflight` concurrent candidates.
/// Cards come back in input order. A provider error on one candidate yields an
/// invalid card for it; a fatal error (missing replay fixture, rejected
/// endpoint) aborts the job.
pub fn score_all<F: Scalar>(
    provider: &dyn Provider<F>,
    job: &ScoringJob,
    max_inflight: usize,
) -> Result<Vec<ScoreCard<F>>, ScoringError> {
    job.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(max_inflight.max(1))
        .build()
        .map_err(|e| ScoringError::Pool(e.to_string()))?;
    let results: Vec<Result<ScoreCard<F>, ProviderError>> =
        pool.install(|| (0..job.candidates.len()).into_par_iter().map(|i| job.score_one(provider, i)).collect());

    let mut cards = Vec::with_capacity(results.len());
    let mut first_error = None;
    let mut failures = 0;
    for (c, r) in job.candidates.iter().zip(results) {
        match r {
            Ok(card) => cards.push(card),
            Err(e) if e.is_fatal() => return Err(e.into()),
            Err(e) => {
                log::warn!("{}: {e}", c.candidate_id);
                failures += 1;
                let msg = e.to_string();
                first_error.get_or_insert_with(|| msg.clone());
                cards.push(ScoreCard::invalid(&c.candidate_id, &c.video_id, provider.id(), msg));
            }
        }
    }
    if failures == cards.len() {
        return Err(ScoringError::AllFailed {
            video_id: job.manifest.video_id.clone(),
            first: first_error.unwrap_or_default(),
        });
    }
    Ok(cards)
}

pub const CARD_CSV_HEADER: [&str; 9] = [
    "candidate_id",
    "grounding",
    "utility",
    "provider_id",
    "video_id",
    "status",
    "grounding_per_token",
    "utility_per_token",
    "templates",
];

/// Flat card export, one row per card in the given order.
pub fn write_cards_csv<F: Scalar, W: Write>(w: W, cards: &[ScoreCard<F>]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CARD_CSV_HEADER)?;
    for c in cards {
        let status = if c.is_valid() { "valid" } else { "invalid" };
        out.write_record([
            c.candidate_id.clone(),
            c.grounding.to_string(),
            c.utility.to_string(),
            c.provider_id.clone(),
            c.video_id.clone(),
            status.to_string(),
            c.grounding_per_token().to_string(),
            c.utility_per_token().to_string(),
            format!("{}+{}", c.grounding_template, c.utility_template),
        ])?;
    }
    out.flush()?;
    Ok(())
}
