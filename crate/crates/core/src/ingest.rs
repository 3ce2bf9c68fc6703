//! Dataset loading, per-dataset presets, and uniform frame sampling.
//!
//! A dataset root holds one directory per video:
//!
//! ```text
//! <root>/<video_id>/manifest.jsonl    one VideoManifest
//! <root>/<video_id>/tasks.jsonl       TaskInstance records
//! <root>/<video_id>/candidates.jsonl  SummaryCandidate records
//! <root>/<video_id>/frames/           images named by the manifest
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};

use crate::domain::{
    validate_candidate, validate_manifest, validate_task, AnswerOption, CandidateSource, MaskStrategy,
    SummaryCandidate, TaskInstance, VideoManifest,
};
use crate::jsonl::{self, RecordError};
use crate::masking::TfidfConfig;
use crate::num::Scalar;

pub const MANIFEST_FILE: &str = "manifest.jsonl";
pub const TASKS_FILE: &str = "tasks.jsonl";
pub const CANDIDATES_FILE: &str = "candidates.jsonl";

const AREAS_TSV: &str = include_str!("../data/learningpaper24_areas.tsv");

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("cannot sample {n} frames from {total}")]
    TooManyFrames { n: usize, total: usize },
    #[error("unknown dataset preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown primary area {0:?}")]
    UnknownArea(String),
    #[error("frame decoder: {0}")]
    Decoder(String),
}

/// Frame indices spread evenly over `[0, total - 1]`, endpoints included.
/// Rounding is half-up, done in integers.
pub fn sample_frame_indices(total: usize, n: usize) -> Result<Vec<usize>, IngestError> {
    if total == 0 || n == 0 || n > total {
        return Err(IngestError::TooManyFrames { n, total });
    }
    if n == 1 {
        return Ok(vec![(total - 1) / 2]);
    }
    // round(k (F-1) / (n-1)) = floor((2k(F-1) + (n-1)) / (2(n-1)))
    let (f1, n1) = (total as u128 - 1, n as u128 - 1);
    Ok((0..n as u128).map(|k| ((2 * k * f1 + n1) / (2 * n1)) as usize).collect())
}

/// Masking and frame settings for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetPreset {
    pub name: String,
    pub dataset_tag: String,
    pub frame_count: usize,
    pub doc_freq_cutoff: f64,
    pub score_threshold: f64,
    pub mask_strategy: MaskStrategy,
    /// Union manifest author keywords into the text mask.
    pub use_author_keywords: bool,
    /// Build one tf-idf corpus per candidate slot (the i-th candidate of every
    /// video) instead of one pooled corpus.
    pub corpus_per_slot: bool,
    pub tasks_per_video: usize,
    /// Known divergence from the upstream frame pipeline, surfaced as a warning.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling_note: Option<String>,
}

impl DatasetPreset {
    pub fn named(name: &str) -> Result<Self, IngestError> {
        let p = |tag: &str, frames, cutoff, threshold, strategy, authors, per_slot, tasks, note: Option<&str>| Self {
            name: name.to_string(),
            dataset_tag: tag.to_string(),
            frame_count: frames,
            doc_freq_cutoff: cutoff,
            score_threshold: threshold,
            mask_strategy: strategy,
            use_author_keywords: authors,
            corpus_per_slot: per_slot,
            tasks_per_video: tasks,
            sampling_note: note.map(str::to_owned),
        };
        Ok(match name {
            "learningpaper24" => p("learningpaper24", 20, 0.10, 0.0025, MaskStrategy::OcrRegions, true, true, 1, None),
            "sutd-trafficqa" => p("sutd-trafficqa", 20, 0.30, 0.01, MaskStrategy::CropRetain, false, false, 4, None),
            "longvideobench" => p(
                "longvideobench",
                32,
                0.50,
                0.006,
                MaskStrategy::CropRetain,
                false,
                false,
                1,
                Some("upstream frames come from the benchmark's own loader; uniform index sampling may differ"),
            ),
            "custom" => p("custom", 20, 0.50, 0.0, MaskStrategy::CropRetain, false, false, 1, None),
            other => return Err(IngestError::UnknownPreset(other.to_string())),
        })
    }

    pub const NAMES: [&'static str; 4] = ["learningpaper24", "sutd-trafficqa", "longvideobench", "custom"];

    pub fn tfidf_config<F: Scalar>(&self) -> TfidfConfig<F> {
        TfidfConfig::new(F::lit(self.doc_freq_cutoff), F::lit(self.score_threshold))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    pub manifests: Vec<VideoManifest>,
    pub tasks: Vec<TaskInstance>,
    pub candidates: Vec<SummaryCandidate>,
    /// Per-video directories, parallel to `manifests`.
    pub video_dirs: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

impl Dataset {
    pub fn tasks_for(&self, video_id: &str) -> Vec<TaskInstance> {
        self.tasks.iter().filter(|t| t.video_id == video_id).cloned().collect()
    }

    pub fn candidates_for(&self, video_id: &str) -> Vec<SummaryCandidate> {
        self.candidates.iter().filter(|c| c.video_id == video_id).cloned().collect()
    }
}

fn schema(path: &Path, line: usize, message: impl Into<String>) -> IngestError {
    RecordError::schema(path, line, message).into()
}

fn read_optional<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>, IngestError> {
    if path.exists() {
        Ok(jsonl::read_numbered(path)?)
    } else {
        Ok(Vec::new())
    }
}

/// Loads and validates every video directory under `root`, in name order.
pub fn load_dataset(root: &Path, preset: &DatasetPreset) -> Result<Dataset, IngestError> {
    let io = |e: std::io::Error| IngestError::Io { path: root.to_path_buf(), message: e.to_string() };
    let mut dirs: Vec<PathBuf> =
        fs::read_dir(root).map_err(io)?.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.is_dir()).collect();
    dirs.sort();

    let mut ds = Dataset::default();
    if dirs.is_empty() {
        let w = format!("{}: no video directories", root.display());
        log::warn!("{w}");
        ds.warnings.push(w);
        return Ok(ds);
    }
    if let Some(note) = &preset.sampling_note {
        ds.warnings.push(format!("{}: {note}", preset.name));
    }
    for dir in dirs {
        let dir_name = dir.file_name().unwrap().to_string_lossy().into_owned();

        let mpath = dir.join(MANIFEST_FILE);
        let manifests: Vec<(usize, VideoManifest)> = jsonl::read_numbered(&mpath)?;
        let [(line, manifest)]: [(usize, VideoManifest); 1] = manifests
            .try_into()
            .map_err(|v: Vec<_>| schema(&mpath, 1, format!("expected one manifest record, found {}", v.len())))?;
        if manifest.video_id != dir_name {
            return Err(schema(&mpath, line, format!("video_id {:?} differs from directory name", manifest.video_id)));
        }
        if let Some(v) = validate_manifest(&manifest, Some(&dir)).violations.first() {
            return Err(schema(&mpath, line, v.message.clone()));
        }
        if manifest.frame_count != preset.frame_count {
            ds.warnings.push(format!(
                "{}: {} frames, preset {} expects {}",
                manifest.video_id, manifest.frame_count, preset.name, preset.frame_count
            ));
        }

        let tpath = dir.join(TASKS_FILE);
        let tasks: Vec<(usize, TaskInstance)> = read_optional(&tpath)?;
        for (line, t) in &tasks {
            if let Some(v) = validate_task(t).violations.first() {
                return Err(schema(&tpath, *line, v.message.clone()));
            }
            if t.video_id != manifest.video_id {
                return Err(schema(&tpath, *line, format!("task for {:?} in {:?}", t.video_id, manifest.video_id)));
            }
        }
        if tasks.len() != preset.tasks_per_video {
            ds.warnings.push(format!(
                "{}: {} tasks, preset {} expects {}",
                manifest.video_id,
                tasks.len(),
                preset.name,
                preset.tasks_per_video
            ));
        }

        let cpath = dir.join(CANDIDATES_FILE);
        let candidates: Vec<(usize, SummaryCandidate)> = read_optional(&cpath)?;
        for (line, c) in &candidates {
            if let Some(v) = validate_candidate(c).violations.first() {
                return Err(schema(&cpath, *line, v.message.clone()));
            }
            if c.video_id != manifest.video_id {
                return Err(schema(
                    &cpath,
                    *line,
                    format!("candidate for {:?} in {:?}", c.video_id, manifest.video_id),
                ));
            }
        }

        ds.manifests.push(manifest);
        ds.video_dirs.push(dir);
        ds.tasks.extend(tasks.into_iter().map(|(_, t)| t));
        ds.candidates.extend(candidates.into_iter().map(|(_, c)| c));
    }
    Ok(ds)
}

/// The twelve consolidated primary areas, in option order.
pub fn learningpaper24_areas() -> Vec<AnswerOption> {
    AREAS_TSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (label, text) = l.split_once('\t').expect("tab-separated area row");
            AnswerOption { label: label.to_string(), text: text.to_string() }
        })
        .collect()
}

pub const LEARNINGPAPER24_QUESTION: &str = "Which research area does this talk belong to?";

/// One paper entry as curated for the talk dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningPaperRecord {
    pub openreview_id: String,
    pub slideslive_id: String,
    #[serde(default)]
    pub url: String,
    pub tldr: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    /// Area text or its option letter.
    pub primary_area: String,
    #[serde(default)]
    pub keywords: Vec<String>,
}

impl LearningPaperRecord {
    pub fn task(&self, video_id: &str) -> Result<TaskInstance, IngestError> {
        let options = learningpaper24_areas();
        let want = self.primary_area.trim();
        let truth = options
            .iter()
            .find(|o| o.label == want || o.text.eq_ignore_ascii_case(want))
            .ok_or_else(|| IngestError::UnknownArea(want.to_string()))?
            .label
            .clone();
        Ok(TaskInstance {
            task_id: format!("{video_id}-area"),
            video_id: video_id.to_string(),
            question: LEARNINGPAPER24_QUESTION.to_string(),
            options,
            truth_label: truth,
        })
    }

    /// The author TL;DR and abstract as external comparison candidates.
    pub fn external_candidates(&self, video_id: &str) -> Vec<SummaryCandidate> {
        [("tldr", &self.tldr), ("abstract", &self.abstract_text)]
            .into_iter()
            .filter(|(_, t)| !t.trim().is_empty())
            .map(|(tag, text)| SummaryCandidate {
                candidate_id: format!("{video_id}-{tag}"),
                video_id: video_id.to_string(),
                text: text.clone(),
                temperature: 0.0,
                source: CandidateSource::External,
                provenance: Some(format!("openreview:{}", self.openreview_id)),
                label: Some(tag.to_string()),
            })
            .collect()
    }
}

/// `ffprobe` invocation printing the decoded frame count of the first video stream.
pub fn ffprobe_frame_count_args(video: &Path) -> Vec<String> {
    [
        "-v",
        "error",
        "-select_streams",
        "v:0",
        "-count_frames",
        "-show_entries",
        "stream=nb_read_frames",
        "-of",
        "csv=p=0",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([video.to_string_lossy().into_owned()])
    .collect()
}

/// `ffmpeg` invocation writing exactly the frames at `indices` as
/// `frame_000.png`, `frame_001.png`, ... in `out_dir`.
pub fn ffmpeg_extract_args(video: &Path, out_dir: &Path, indices: &[usize]) -> Vec<String> {
    let select = indices.iter().map(|i| format!("eq(n\\,{i})")).collect::<Vec<_>>().join("+");
    vec![
        "-v".into(),
        "error".into(),
        "-i".into(),
        video.to_string_lossy().into_owned(),
        "-vf".into(),
        format!("select={select}"),
        "-fps_mode".into(),
        "passthrough".into(),
        "-start_number".into(),
        "0".into(),
        out_dir.join("frame_%03d.png").to_string_lossy().into_owned(),
    ]
}

/// Runs the external decoder and returns the written frame paths, relative to `out_dir`.
pub fn extract_frames(video: &Path, out_dir: &Path, n: usize) -> Result<Vec<String>, IngestError> {
    let probe = Command::new("ffprobe")
        .args(ffprobe_frame_count_args(video))
        .output()
        .map_err(|e| IngestError::Decoder(format!("ffprobe: {e}")))?;
    if !probe.status.success() {
        return Err(IngestError::Decoder(String::from_utf8_lossy(&probe.stderr).into_owned()));
    }
    let total: usize = String::from_utf8_lossy(&probe.stdout)
        .trim()
        .parse()
        .map_err(|e| IngestError::Decoder(format!("frame count: {e}")))?;
    let indices = sample_frame_indices(total, n)?;
    fs::create_dir_all(out_dir).map_err(|e| IngestError::Io { path: out_dir.into(), message: e.to_string() })?;
    let status = Command::new("ffmpeg")
        .args(ffmpeg_extract_args(video, out_dir, &indices))
        .status()
        .map_err(|e| IngestError::Decoder(format!("ffmpeg: {e}")))?;
    if !status.success() {
        return Err(IngestError::Decoder(format!("ffmpeg exited with {status}")));
    }
    Ok((0..n).map(|i| format!("frame_{i:03}.png")).collect())
}
