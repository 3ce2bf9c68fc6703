//! The eight pipeline stages. Each reads earlier artifacts from the output
//! directory, computes everything in memory, and only then writes its own files.

use std::collections::BTreeMap;
use std::io::Cursor;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use vibe_core::domain::{
    validate_response, CandidateSource, Condition, MaskPlan, MaskedText, ResponseRecord, SummaryCandidate,
    VideoManifest,
};
use vibe_core::ingest::{load_dataset, Dataset, DatasetPreset};
use vibe_core::jsonl;
use vibe_core::masking::{apply_mask_plan, extract_keywords, mask_text, plan_video_mask, OcrEvidence, OcrRecord};
use vibe_core::provider::mock::JointProvider;
use vibe_core::provider::openai::CompletionsProvider;
use vibe_core::provider::template::TemplateStore;
use vibe_core::provider::transport::{HttpTransport, RecordingTransport, ReplayTransport, RetryPolicy, Transport};
use vibe_core::provider::{sample_candidates, FrameSet, Provider, ScoringContext, Slot};
use vibe_core::scoring::{score_all, write_cards_csv, ScoringJob};
use vibe_core::selection::{default_alphas, select_best, sweep, sweep_svg, write_sweep_csv, SelectionConfig};
use vibe_core::stats::{
    all_participant_metrics, condition_table, correlation_table, participant_scatter_svg, stimulus_rows,
    stimulus_scatter_svg, welch_t_test, write_correlation_csv, write_summary_csv, write_table_csv, ParticipantMetrics,
    StimulusInfo,
};
use vibe_core::{JointSpec, KeywordSet, ScoreCard, SweepResult};

use crate::artifacts::{OutDir, Outputs};
use crate::config::{RunConfig, TransportKind, ENV_API_KEY, ENV_ENDPOINT};
use crate::error::CliError;

pub const KEYWORDS: &str = "keywords.jsonl";
pub const MASKED_TEXTS: &str = "masked_texts.jsonl";
pub const MASK_PLANS: &str = "mask_plans.jsonl";
pub const MASKED_FRAMES: &str = "masked_frames";
pub const CANDIDATES: &str = "candidates.jsonl";
pub const SCORECARDS: &str = "scorecards.jsonl";
pub const SCORECARDS_CSV: &str = "scorecards.csv";
pub const SELECTION_CSV: &str = "selection.csv";
pub const SWEEP: &str = "sweep.jsonl";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const FRONTIER_CSV: &str = "frontier.csv";
pub const TABLE_CSV: &str = "study_table.csv";
pub const CONDITIONS_CSV: &str = "conditions.csv";
pub const PARTICIPANTS_CSV: &str = "participants.csv";
pub const WELCH_CSV: &str = "welch.csv";
pub const CORRELATIONS_CSV: &str = "correlations.csv";
pub const REPORT: &str = "report.md";
/// Optional per-video OCR output consumed by the `ocr_regions` mask.
pub const OCR_FILE: &str = "ocr.jsonl";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeywordRecord {
    /// `all`, or `slot-<i>` when each candidate position has its own corpus.
    pub scope: String,
    pub keywords: KeywordSet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaskedTextRecord {
    pub candidate_id: String,
    pub video_id: String,
    pub scope: String,
    pub masked: MaskedText,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRecord {
    pub video_id: String,
    pub result: SweepResult,
}

pub struct Context {
    pub cfg: RunConfig,
    pub out: OutDir,
    pub preset: DatasetPreset,
}

/// Per-video seed, independent of the order videos are processed in.
pub fn video_seed(seed: u64, video_id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(video_id.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

pub fn masked_frame_name(i: usize) -> String {
    format!("frame_{i:03}.png")
}

fn by_video(cards: Vec<ScoreCard>) -> BTreeMap<String, Vec<ScoreCard>> {
    let mut out: BTreeMap<String, Vec<ScoreCard>> = BTreeMap::new();
    for c in cards {
        out.entry(c.video_id.clone()).or_default().push(c);
    }
    out
}

fn tag_of(c: &SummaryCandidate) -> Option<String> {
    c.label.clone().or_else(|| (c.source == CandidateSource::Cot).then(|| "cot".to_string()))
}

impl Context {
    pub fn dataset(&self) -> Result<Dataset, CliError> {
        let root = self.cfg.resolve(&self.cfg.dataset.root);
        let ds = load_dataset(&root, &self.preset)?;
        for w in &ds.warnings {
            log::warn!("{w}");
        }
        Ok(ds)
    }

    /// Candidates from the `sample` stage when it ran, otherwise the dataset's own.
    pub fn candidates(&self, ds: &Dataset) -> Result<Vec<SummaryCandidate>, CliError> {
        if self.out.exists(CANDIDATES) {
            self.out.read_records(CANDIDATES, "sample")
        } else {
            Ok(ds.candidates.clone())
        }
    }

    fn tags(&self, ds: &Dataset) -> Result<BTreeMap<String, String>, CliError> {
        Ok(self.candidates(ds)?.iter().filter_map(|c| Some((c.candidate_id.clone(), tag_of(c)?))).collect())
    }

    fn templates(&self) -> Result<TemplateStore, CliError> {
        let store = TemplateStore::bundled();
        Ok(match &self.cfg.provider.templates {
            Some(dir) => store.load_dir(&self.cfg.resolve(dir))?,
            None => store,
        })
    }

    pub fn provider(&self) -> Result<Box<dyn Provider<f64>>, CliError> {
        let p = &self.cfg.provider;
        let completions = |transport: Box<dyn Transport>| -> Result<CompletionsProvider, CliError> {
            let provider = CompletionsProvider::new(transport, p.model.clone(), self.templates()?);
            Ok(match &p.path {
                Some(path) => provider.with_path(path.clone())?,
                None => provider,
            })
        };
        match p.transport {
            TransportKind::Mock => {
                let joint = p.joint.as_ref().ok_or_else(|| CliError::config("provider.joint is required for mock"))?;
                let spec = JointSpec::load(&self.cfg.resolve(joint))?;
                Ok(Box::new(JointProvider::new(spec).with_id(p.model.clone())))
            }
            TransportKind::Replay => {
                let dir =
                    p.fixtures.as_ref().ok_or_else(|| CliError::config("provider.fixtures is required for replay"))?;
                Ok(Box::new(completions(Box::new(ReplayTransport::new(self.cfg.resolve(dir))?))?))
            }
            TransportKind::Live => {
                let key = std::env::var(ENV_API_KEY).ok().filter(|k| !k.is_empty());
                let key = key.ok_or(CliError::Credentials(ENV_API_KEY))?;
                let endpoint = std::env::var(ENV_ENDPOINT)
                    .ok()
                    .or_else(|| p.endpoint.clone())
                    .ok_or_else(|| CliError::config(format!("set {ENV_ENDPOINT} or provider.endpoint")))?;
                let retry = RetryPolicy { max_attempts: p.max_attempts, ..RetryPolicy::default() };
                let http = HttpTransport::new(endpoint, Some(key), retry)?;
                let transport: Box<dyn Transport> = match &p.record {
                    Some(dir) => Box::new(RecordingTransport::new(http, self.cfg.resolve(dir))?),
                    None => Box::new(http),
                };
                let provider = completions(transport)?;
                provider.probe()?;
                Ok(Box::new(provider))
            }
        }
    }
}

/// Position of each candidate within its video's list, the tf-idf scope key.
fn slots(cands: &[SummaryCandidate]) -> Vec<usize> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    cands
        .iter()
        .map(|c| {
            let n = seen.entry(c.video_id.as_str()).or_default();
            *n += 1;
            *n - 1
        })
        .collect()
}

fn scope_names(preset: &DatasetPreset, cands: &[SummaryCandidate]) -> Vec<String> {
    if preset.corpus_per_slot {
        slots(cands).into_iter().map(|s| format!("slot-{s}")).collect()
    } else {
        vec!["all".to_string(); cands.len()]
    }
}

pub fn keywords(ctx: &Context) -> Result<Outputs, CliError> {
    let ds = ctx.dataset()?;
    let cands = ctx.candidates(&ds)?;
    if cands.is_empty() {
        return Err(CliError::config("no candidates to build a keyword corpus from"));
    }
    let cfg = ctx.preset.tfidf_config::<f64>();
    let mut corpora: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for (c, scope) in cands.iter().zip(scope_names(&ctx.preset, &cands)) {
        corpora.entry(scope).or_default().push(&c.text);
    }
    let mut records = Vec::new();
    let mut outs = Outputs::default();
    for (scope, docs) in corpora {
        let keywords = extract_keywords(&docs, &cfg)?;
        log::info!("{scope}: {} keywords from {} documents", keywords.len(), docs.len());
        outs.push(format!("keywords_{scope}.csv"), ctx.out.csv(|b| keywords.write_csv(b))?);
        records.push(KeywordRecord { scope, keywords });
    }
    outs.push(KEYWORDS, ctx.out.jsonl(&records));
    Ok(outs)
}

fn load_frames(manifest: &VideoManifest, dir: &Path) -> Result<Vec<image::RgbImage>, CliError> {
    manifest
        .frame_paths
        .iter()
        .map(|p| {
            let path = dir.join(p);
            Ok(image::open(&path).map_err(|e| CliError::io(&path, e))?.to_rgb8())
        })
        .collect()
}

fn png_bytes(img: &image::RgbImage) -> Result<Vec<u8>, CliError> {
    let mut buf = Cursor::new(Vec::new());
    img.write_to(&mut buf, image::ImageFormat::Png).map_err(|e| CliError::io(Path::new("<png>"), e))?;
    Ok(buf.into_inner())
}

pub fn mask(ctx: &Context) -> Result<Outputs, CliError> {
    let ds = ctx.dataset()?;
    let cands = ctx.candidates(&ds)?;
    let sets: BTreeMap<String, KeywordSet> = ctx
        .out
        .read_records::<KeywordRecord>(KEYWORDS, "keywords")?
        .into_iter()
        .map(|r| (r.scope, r.keywords))
        .collect();
    let scopes = scope_names(&ctx.preset, &cands);

    let mut texts = Vec::with_capacity(cands.len());
    let mut plans = Vec::with_capacity(ds.manifests.len());
    let mut outs = Outputs::default();
    for (manifest, dir) in ds.manifests.iter().zip(&ds.video_dirs) {
        let vid = &manifest.video_id;
        let authors: &[String] = if ctx.preset.use_author_keywords { &manifest.author_keywords } else { &[] };
        for (c, scope) in cands.iter().zip(&scopes).filter(|(c, _)| &c.video_id == vid) {
            let set = sets
                .get(scope)
                .ok_or_else(|| CliError::MissingDependency { path: ctx.out.path(KEYWORDS), stage: "keywords" })?;
            let masked = mask_text(&c.text, &set.with_extra(authors))?;
            texts.push(MaskedTextRecord {
                candidate_id: c.candidate_id.clone(),
                video_id: vid.clone(),
                scope: scope.clone(),
                masked,
            });
        }

        let strategy = ctx.preset.mask_strategy;
        let seed = video_seed(ctx.cfg.seed, vid);
        let plan = if strategy == vibe_core::domain::MaskStrategy::OcrRegions {
            let ocr_path = dir.join(OCR_FILE);
            let records: Vec<OcrRecord> = jsonl::read(&ocr_path)?;
            let mut phrases: Vec<&str> = sets.values().flat_map(|s| s.ngrams()).collect();
            phrases.extend(authors.iter().map(String::as_str));
            let union = KeywordSet::from_phrases(format!("ocr-{vid}"), &phrases);
            plan_video_mask(manifest, strategy, seed, Some(OcrEvidence { records: &records, keywords: &union }))?
        } else {
            plan_video_mask::<f64>(manifest, strategy, seed, None)?
        };
        let masked = apply_mask_plan(&load_frames(manifest, dir)?, &plan)?;
        for (i, img) in masked.iter().enumerate() {
            outs.push(Path::new(MASKED_FRAMES).join(vid).join(masked_frame_name(i)), png_bytes(img)?);
        }
        plans.push(plan);
    }
    outs.push(MASKED_TEXTS, ctx.out.jsonl(&texts));
    outs.push(MASK_PLANS, ctx.out.jsonl(&plans));
    Ok(outs)
}

pub fn sample(ctx: &Context) -> Result<Outputs, CliError> {
    let ds = ctx.dataset()?;
    let provider = ctx.provider()?;
    let s = &ctx.cfg.sampling;
    let mut out = Vec::new();
    for (manifest, dir) in ds.manifests.iter().zip(&ds.video_dirs) {
        let prompt = ScoringContext::new(s.template.clone())
            .with_frames(FrameSet::from_manifest(manifest, dir))
            .with_text(Slot::Instruction, s.instruction.clone());
        let seed = video_seed(ctx.cfg.seed, &manifest.video_id);
        out.extend(sample_candidates(provider.as_ref(), &prompt, &manifest.video_id, &s.temperatures, seed)?);
    }
    // comparison candidates (chain-of-thought, external, tagged) stay alongside the samples
    for c in ds.candidates.iter().filter(|c| c.source != CandidateSource::Sampled || c.label.is_some()) {
        if out.iter().any(|o| o.candidate_id == c.candidate_id) {
            return Err(CliError::config(format!(
                "dataset candidate id {} collides with a sampled id",
                c.candidate_id
            )));
        }
        out.push(c.clone());
    }
    let mut outs = Outputs::default();
    outs.push(CANDIDATES, ctx.out.jsonl(&out));
    Ok(outs)
}

pub fn score(ctx: &Context) -> Result<Outputs, CliError> {
    let ds = ctx.dataset()?;
    let cands = ctx.candidates(&ds)?;
    let texts: BTreeMap<String, MaskedText> = ctx
        .out
        .read_records::<MaskedTextRecord>(MASKED_TEXTS, "mask")?
        .into_iter()
        .map(|r| (r.candidate_id, r.masked))
        .collect();
    let plans: BTreeMap<String, MaskPlan> =
        ctx.out.read_records::<MaskPlan>(MASK_PLANS, "mask")?.into_iter().map(|p| (p.video_id.clone(), p)).collect();
    let missing = |path: PathBuf| CliError::MissingDependency { path, stage: "mask" };

    let mut jobs = Vec::new();
    for (manifest, dir) in ds.manifests.iter().zip(&ds.video_dirs) {
        let vid = &manifest.video_id;
        let candidates: Vec<SummaryCandidate> = cands.iter().filter(|c| &c.video_id == vid).cloned().collect();
        if candidates.is_empty() {
            log::warn!("{vid}: no candidates, skipped");
            continue;
        }
        let masked_texts = candidates
            .iter()
            .map(|c| texts.get(&c.candidate_id).cloned().ok_or_else(|| missing(ctx.out.path(MASKED_TEXTS))))
            .collect::<Result<Vec<_>, _>>()?;
        let plan = plans.get(vid).cloned().ok_or_else(|| missing(ctx.out.path(MASK_PLANS)))?;
        let masked_paths = (0..manifest.frame_count)
            .map(|i| {
                let p = ctx.out.path(Path::new(MASKED_FRAMES).join(vid).join(masked_frame_name(i)));
                if p.is_file() {
                    Ok(p.to_string_lossy().into_owned())
                } else {
                    Err(missing(p))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        jobs.push(ScoringJob {
            manifest: manifest.clone(),
            frames: FrameSet::from_manifest(manifest, dir),
            masked_frames: FrameSet { video_id: vid.clone(), masked: true, paths: masked_paths },
            plan,
            candidates,
            masked_texts,
            tasks: ds.tasks_for(vid),
            grounding_template: ctx.cfg.scoring.grounding_template.clone(),
            utility_template: ctx.cfg.scoring.utility_template.clone(),
            answer_form: ctx.cfg.scoring.answer_form,
        });
    }

    let provider = ctx.provider()?;
    let mut cards = Vec::new();
    for job in &jobs {
        cards.extend(score_all(provider.as_ref(), job, ctx.cfg.scoring.max_inflight)?);
    }
    let mut outs = Outputs::default();
    outs.push(SCORECARDS, ctx.out.jsonl(&cards));
    outs.push(SCORECARDS_CSV, ctx.out.csv(|b| write_cards_csv(b, &cards))?);
    Ok(outs)
}

fn read_cards(ctx: &Context) -> Result<BTreeMap<String, Vec<ScoreCard>>, CliError> {
    Ok(by_video(ctx.out.read_records(SCORECARDS, "score")?))
}

pub fn select(ctx: &Context) -> Result<Outputs, CliError> {
    let cfg = SelectionConfig::new(ctx.cfg.selection.alpha, ctx.cfg.beta())?;
    let mut buf = Vec::new();
    for (vid, cards) in read_cards(ctx)? {
        let best = select_best(&cards, &cfg)?;
        buf.push([
            vid,
            best.candidate_id.clone(),
            cfg.alpha.to_string(),
            cfg.beta.to_string(),
            best.grounding.to_string(),
            best.utility.to_string(),
            cfg.objective(best).to_string(),
        ]);
    }
    let body = ctx.out.csv(|b| {
        let mut w = csv::Writer::from_writer(b);
        w.write_record(["video_id", "candidate_id", "alpha", "beta", "grounding", "utility", "objective"])?;
        for r in &buf {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    })?;
    let mut outs = Outputs::default();
    outs.push(SELECTION_CSV, body);
    Ok(outs)
}

fn svg_name(video_id: &str) -> String {
    let safe: String =
        video_id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect();
    format!("sweep_{safe}.svg")
}

pub fn sweep_stage(ctx: &Context) -> Result<Outputs, CliError> {
    let cards = read_cards(ctx)?;
    let tags = ctx.tags(&ctx.dataset()?)?;
    let alphas = default_alphas::<f64>();
    let mut rows = Vec::with_capacity(cards.len());
    let mut outs = Outputs::default();
    for (vid, cs) in &cards {
        let result = sweep(cs, &alphas)?;
        outs.push(svg_name(vid), ctx.out.svg(&sweep_svg(vid, cs, &tags)));
        rows.push((vid.clone(), result));
    }
    outs.push(SWEEP_CSV, ctx.out.csv(|b| write_sweep_csv(b, &rows))?);
    let frontier = ctx.out.csv(|b| {
        let mut w = csv::Writer::from_writer(b);
        w.write_record(["video_id", "candidate_id", "grounding", "utility"])?;
        for (vid, r) in &rows {
            for id in &r.frontier {
                let c = cards[vid].iter().find(|c| &c.candidate_id == id).expect("frontier ids come from the cards");
                w.write_record([vid, id, &c.grounding.to_string(), &c.utility.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    })?;
    outs.push(FRONTIER_CSV, frontier);
    let records: Vec<SweepRecord> =
        rows.into_iter().map(|(video_id, result)| SweepRecord { video_id, result }).collect();
    outs.push(SWEEP, ctx.out.jsonl(&records));
    Ok(outs)
}

fn read_responses(path: &Path) -> Result<Vec<ResponseRecord>, CliError> {
    let rows: Vec<(usize, ResponseRecord)> = jsonl::read_numbered(path)?;
    for (line, r) in &rows {
        if let Some(v) = validate_response(r).violations.first() {
            return Err(jsonl::RecordError::schema(path, *line, v.message.clone()).into());
        }
    }
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// One-tailed Welch comparisons of every condition against every earlier one,
/// oriented so a small p favours the later condition.
fn welch_rows(metrics: &[ParticipantMetrics<f64>]) -> Vec<[String; 9]> {
    let col = |c: Condition, f: &dyn Fn(&ParticipantMetrics<f64>) -> Option<f64>| -> Vec<f64> {
        metrics.iter().filter(|m| m.condition == c).filter_map(f).collect()
    };
    let present: Vec<Condition> =
        Condition::ALL.into_iter().filter(|c| metrics.iter().any(|m| m.condition == *c)).collect();
    let mut rows = Vec::new();
    for (i, &base) in present.iter().enumerate() {
        for &cond in &present[i + 1..] {
            let acc = |m: &ParticipantMetrics<f64>| Some(m.accuracy);
            let rt = |m: &ParticipantMetrics<f64>| Some(m.total_rt);
            let ies = |m: &ParticipantMetrics<f64>| m.ies;
            // accuracy: higher is better; time and IES: lower is better
            let tests = [
                ("accuracy", col(cond, &acc), col(base, &acc)),
                ("rt", col(base, &rt), col(cond, &rt)),
                ("ies", col(base, &ies), col(cond, &ies)),
            ];
            for (metric, a, b) in tests {
                let (na, nb) = (a.len().to_string(), b.len().to_string());
                let head = [metric.to_string(), cond.to_string(), base.to_string()];
                let tail = match welch_t_test(&a, &b) {
                    Ok(w) => [w.t.to_string(), w.df.to_string(), w.p_one_tailed.to_string(), w.cohens_d.to_string()],
                    Err(e) => [String::new(), String::new(), String::new(), e.to_string()],
                };
                let [m, c, b0] = head;
                let [t, df, p, d] = tail;
                rows.push([m, c, b0, na, nb, t, df, p, d]);
            }
        }
    }
    rows
}

pub fn stats(ctx: &Context) -> Result<Outputs, CliError> {
    let path = ctx.cfg.stats.responses.as_ref().ok_or_else(|| CliError::config("stats.responses is not set"))?;
    let records = read_responses(&ctx.cfg.resolve(path))?;
    let table = condition_table::<f64>(&records)?;
    let metrics = all_participant_metrics::<f64>(&records)?;

    let mut outs = Outputs::default();
    outs.push(TABLE_CSV, ctx.out.csv(|b| write_table_csv(b, &table))?);
    outs.push(CONDITIONS_CSV, ctx.out.csv(|b| write_summary_csv(b, &table))?);
    outs.push(
        PARTICIPANTS_CSV,
        ctx.out.csv(|b| {
            let mut w = csv::Writer::from_writer(b);
            w.write_record(["participant_id", "condition", "n", "accuracy", "total_rt", "ies"])?;
            for m in &metrics {
                w.write_record([
                    m.participant_id.clone(),
                    m.condition.to_string(),
                    m.n.to_string(),
                    m.accuracy.to_string(),
                    m.total_rt.to_string(),
                    m.ies.map(|v| v.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            Ok(())
        })?,
    );
    let welch = welch_rows(&metrics);
    outs.push(
        WELCH_CSV,
        ctx.out.csv(|b| {
            let mut w = csv::Writer::from_writer(b);
            w.write_record([
                "metric",
                "condition",
                "baseline",
                "n_a",
                "n_b",
                "t",
                "df",
                "p_one_tailed",
                "cohens_d_or_note",
            ])?;
            for r in &welch {
                w.write_record(r)?;
            }
            w.flush()?;
            Ok(())
        })?,
    );
    outs.push("participants.svg", ctx.out.svg(&participant_scatter_svg("accuracy vs speed", &metrics)));

    if let Some(stim) = &ctx.cfg.stats.stimuli {
        let info: Vec<StimulusInfo> = jsonl::read(&ctx.cfg.resolve(stim))?;
        let rows = stimulus_rows::<f64>(&info, &records);
        let corr = correlation_table(&rows);
        outs.push(CORRELATIONS_CSV, ctx.out.csv(|b| write_correlation_csv(b, &corr))?);
        for (x, y) in vibe_core::stats::CORRELATION_PAIRS {
            let svg = stimulus_scatter_svg(&format!("{y} vs {x}"), &rows, x, y);
            outs.push(format!("stimuli_{x}_{y}.svg"), ctx.out.svg(&svg));
        }
    }
    Ok(outs)
}

/// Consecutive alphas that picked the same candidate, as `(from, to, id)`.
fn alpha_runs(result: &SweepResult) -> Vec<(f64, f64, String)> {
    let mut runs: Vec<(f64, f64, String)> = Vec::new();
    for p in &result.points {
        match runs.last_mut() {
            Some(last) if last.2 == p.candidate_id => last.1 = p.alpha,
            _ => runs.push((p.alpha, p.alpha, p.candidate_id.clone())),
        }
    }
    runs
}

fn fmt_score(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.4}")
    } else {
        "n/a".into()
    }
}

pub fn report(ctx: &Context) -> Result<Outputs, CliError> {
    let cards = read_cards(ctx)?;
    let sweeps: BTreeMap<String, SweepResult> =
        ctx.out.read_records::<SweepRecord>(SWEEP, "sweep")?.into_iter().map(|r| (r.video_id, r.result)).collect();
    let tags = ctx.tags(&ctx.dataset()?)?;
    let cfg = SelectionConfig::new(ctx.cfg.selection.alpha, ctx.cfg.beta())?;

    let mut md = ctx.out.prov.comment();
    md.push_str("# Summary selection report\n\n");
    md.push_str(&format!("- dataset preset: {}\n", ctx.preset.name));
    md.push_str(&format!("- provider: {} ({})\n", ctx.cfg.provider.model, ctx.cfg.provider.transport.as_str()));
    md.push_str(&format!("- weights: alpha = {}, beta = {}\n", cfg.alpha, cfg.beta));
    md.push_str(&format!("- videos: {}\n", cards.len()));
    for (vid, cs) in &cards {
        let sweep =
            sweeps.get(vid).ok_or_else(|| CliError::MissingDependency { path: ctx.out.path(SWEEP), stage: "sweep" })?;
        let chosen = select_best(cs, &cfg)?.candidate_id.clone();
        md.push_str(&format!("\n## {vid}\n\n"));
        md.push_str("| candidate | tag | grounding | utility | status | frontier | selected |\n");
        md.push_str("|---|---|---|---|---|---|---|\n");
        for c in cs {
            let status = if c.is_valid() { "valid" } else { "invalid" };
            md.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                c.candidate_id,
                tags.get(&c.candidate_id).map_or("", String::as_str),
                fmt_score(c.grounding),
                fmt_score(c.utility),
                status,
                if sweep.frontier.contains(&c.candidate_id) { "yes" } else { "" },
                if c.candidate_id == chosen { "yes" } else { "" },
            ));
        }
        md.push_str("\nAlpha sweep (beta = 1 - alpha):\n\n");
        for (from, to, id) in alpha_runs(sweep) {
            md.push_str(&format!("- {from:.2} to {to:.2}: {id}\n"));
        }
    }
    let mut outs = Outputs::default();
    outs.push(REPORT, md);
    Ok(outs)
}
