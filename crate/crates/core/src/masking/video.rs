//! Frame-region masking: seeded 1/16 crops and OCR keyword blackout.

use image::{Rgb, RgbImage};
use serde::{Deserialize, Serialize};

use super::text::KeywordMatcher;
use super::tfidf::KeywordSet;
use super::tokenize::tokenize;
use super::MaskingError;
use crate::domain::{MaskPlan, MaskStrategy, Rect, VideoManifest};
use crate::num::Scalar;

/// Side of the crop square as a fraction of the frame side; area 1/16.
pub const CROP_SIDE: f64 = 0.25;

/// One word recognized by an external OCR engine, box in normalized coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OcrRecord {
    pub frame_index: usize,
    pub word: String,
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl OcrRecord {
    pub fn rect(&self) -> Rect {
        Rect { x0: self.x0, y0: self.y0, x1: self.x1, y1: self.y1 }
    }
}

/// OCR output plus the keywords whose matches get blacked out.
#[derive(Debug, Clone, Copy)]
pub struct OcrEvidence<'a, F> {
    pub records: &'a [OcrRecord],
    pub keywords: &'a KeywordSet<F>,
}

// SplitMix64 finalizer, used as a counter-based generator.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in `[0, 1)` for `(seed, counter)`; independent of call order.
pub fn counter_uniform(seed: u64, counter: u64) -> f64 {
    let bits = mix64(mix64(seed) ^ counter);
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The crop square for one frame: top-left drawn uniformly over valid placements.
pub fn crop_rect(seed: u64, frame_index: usize) -> Rect {
    let k = frame_index as u64;
    let free = 1.0 - CROP_SIDE;
    let x0 = counter_uniform(seed, 2 * k) * free;
    let y0 = counter_uniform(seed, 2 * k + 1) * free;
    Rect { x0, y0, x1: x0 + CROP_SIDE, y1: y0 + CROP_SIDE }
}

pub fn plan_video_mask<F: Scalar>(
    manifest: &VideoManifest,
    strategy: MaskStrategy,
    seed: u64,
    ocr: Option<OcrEvidence<'_, F>>,
) -> Result<MaskPlan, MaskingError> {
    let n = manifest.frame_count;
    let per_frame_regions = match strategy {
        MaskStrategy::None => vec![Vec::new(); n],
        MaskStrategy::CropRetain | MaskStrategy::CropOcclude => (0..n).map(|i| vec![crop_rect(seed, i)]).collect(),
        MaskStrategy::OcrRegions => {
            let ocr = ocr.ok_or(MaskingError::OcrOutputMissing)?;
            ocr_regions(n, ocr)?
        }
    };
    Ok(MaskPlan { video_id: manifest.video_id.clone(), strategy, seed, per_frame_regions })
}

fn ocr_regions<F: Scalar>(frames: usize, ocr: OcrEvidence<'_, F>) -> Result<Vec<Vec<Rect>>, MaskingError> {
    let matcher = KeywordMatcher::from_keywords(ocr.keywords);
    let mut by_frame: Vec<Vec<&OcrRecord>> = vec![Vec::new(); frames];
    for r in ocr.records {
        by_frame
            .get_mut(r.frame_index)
            .ok_or(MaskingError::OcrFrameOutOfRange { frame: r.frame_index, frames })?
            .push(r);
    }
    let mut out = Vec::with_capacity(frames);
    for words in by_frame {
        // flatten words into normalized tokens, remembering the source word
        let mut norms = Vec::new();
        let mut owner = Vec::new();
        for (w, rec) in words.iter().enumerate() {
            for t in tokenize(&rec.word) {
                norms.push(t.norm);
                owner.push(w);
            }
        }
        let mut hit = vec![false; words.len()];
        for (start, len) in matcher.matches(&norms) {
            for &w in &owner[start..start + len] {
                hit[w] = true;
            }
        }
        let rects = words.iter().zip(hit).filter(|(_, h)| *h).map(|(r, _)| r.rect()).collect();
        out.push(rects);
    }
    Ok(out)
}

/// Pixel box `(x, y, w, h)` for a crop square: fixed side, origin clamped inside.
fn crop_pixels(r: &Rect, width: u32, height: u32) -> (u32, u32, u32, u32) {
    let w = ((r.width() * f64::from(width)).round() as u32).clamp(1, width);
    let h = ((r.height() * f64::from(height)).round() as u32).clamp(1, height);
    let x = ((r.x0 * f64::from(width)).round() as u32).min(width - w);
    let y = ((r.y0 * f64::from(height)).round() as u32).min(height - h);
    (x, y, w, h)
}

/// Pixel box covering the whole region (outward rounding).
fn cover_pixels(r: &Rect, width: u32, height: u32) -> (u32, u32, u32, u32) {
    let x0 = (r.x0 * f64::from(width)).floor() as u32;
    let y0 = (r.y0 * f64::from(height)).floor() as u32;
    let x1 = ((r.x1 * f64::from(width)).ceil() as u32).min(width);
    let y1 = ((r.y1 * f64::from(height)).ceil() as u32).min(height);
    (x0, y0, x1.saturating_sub(x0), y1.saturating_sub(y0))
}

fn fill_black(img: &mut RgbImage, (x, y, w, h): (u32, u32, u32, u32)) {
    for py in y..y + h {
        for px in x..x + w {
            img.put_pixel(px, py, Rgb([0, 0, 0]));
        }
    }
}

/// Applies `plan` to copies of `frames`; inputs are left untouched.
pub fn apply_mask_plan(frames: &[RgbImage], plan: &MaskPlan) -> Result<Vec<RgbImage>, MaskingError> {
    if frames.len() != plan.per_frame_regions.len() {
        return Err(MaskingError::FrameCountMismatch { plan: plan.per_frame_regions.len(), frames: frames.len() });
    }
    for (i, rects) in plan.per_frame_regions.iter().enumerate() {
        if let Some(r) = rects.iter().find(|r| !r.is_inside_unit_square()) {
            return Err(MaskingError::RectOutOfBounds { frame: i, rect: *r });
        }
    }
    frames
        .iter()
        .zip(&plan.per_frame_regions)
        .map(|(frame, rects)| {
            let (w, h) = frame.dimensions();
            Ok(match plan.strategy {
                MaskStrategy::None => frame.clone(),
                MaskStrategy::CropRetain => {
                    let r = rects.first().copied().unwrap_or(Rect { x0: 0.0, y0: 0.0, x1: 1.0, y1: 1.0 });
                    let (x, y, cw, ch) = crop_pixels(&r, w, h);
                    image::imageops::crop_imm(frame, x, y, cw, ch).to_image()
                }
                MaskStrategy::CropOcclude => {
                    let mut out = frame.clone();
                    for r in rects {
                        fill_black(&mut out, crop_pixels(r, w, h));
                    }
                    out
                }
                MaskStrategy::OcrRegions => {
                    let mut out = frame.clone();
                    for r in rects {
                        fill_black(&mut out, cover_pixels(r, w, h));
                    }
                    out
                }
            })
        })
        .collect()
}
