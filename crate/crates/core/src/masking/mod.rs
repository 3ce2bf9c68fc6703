//! Text masking with corpus tf-idf keywords and frame masking with seeded
//! crops or OCR keyword regions.

mod text;
mod tfidf;
mod tokenize;
mod video;

pub use text::{count_keyword_occurrences, mask_text, KeywordMatcher};
pub use tfidf::{extract_keywords, KeywordSet, KeywordTerm, TfidfConfig};
pub use tokenize::{normalize_phrase, tokenize, words, Token};
pub use video::{apply_mask_plan, counter_uniform, crop_rect, plan_video_mask, OcrEvidence, OcrRecord, CROP_SIDE};

use crate::domain::Rect;

#[derive(Debug, thiserror::Error)]
pub enum MaskingError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("invalid tf-idf config: {0}")]
    InvalidConfig(String),
    #[error("input text contains the reserved token <MASK>")]
    ReservedToken,
    #[error("input text is empty")]
    EmptyText,
    #[error("ocr output missing")]
    OcrOutputMissing,
    #[error("ocr record for frame {frame} but the video has {frames} frames")]
    OcrFrameOutOfRange { frame: usize, frames: usize },
    #[error("mask rectangle {rect:?} on frame {frame} is out of bounds")]
    RectOutOfBounds { frame: usize, rect: Rect },
    #[error("mask plan covers {plan} frames but {frames} were given")]
    FrameCountMismatch { plan: usize, frames: usize },
}
