//! Independent reference implementations shared by the integration tests.
//! Nothing here calls the code under test except to read its inputs.

#![allow(dead_code)]

pub mod echo_server;
pub mod frozen_stats;

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vibe_core::provider::mock::{JointSpec, MaskChannel};

// ---- tf-idf -------------------------------------------------------------

/// `ngram -> (score, doc_freq)` by direct counting over whitespace tokens.
pub fn tfidf_oracle(docs: &[Vec<&str>], cutoff: f64, threshold: f64) -> BTreeMap<String, (f64, usize)> {
    let n_docs = docs.len() as f64;
    let mut out = BTreeMap::new();
    for n in 1..=3usize {
        let mut vocab = BTreeSet::new();
        for d in docs {
            if d.len() >= n {
                for i in 0..=d.len() - n {
                    vocab.insert(d[i..i + n].join(" "));
                }
            }
        }
        for term in vocab {
            let mut df = 0usize;
            let mut best_tf = 0.0f64;
            for d in docs {
                if d.len() < n {
                    continue;
                }
                let windows = d.len() - n + 1;
                let count = (0..windows).filter(|&i| d[i..i + n].join(" ") == term).count();
                if count > 0 {
                    df += 1;
                    best_tf = best_tf.max(count as f64 / windows as f64);
                }
            }
            if df as f64 / n_docs > cutoff {
                continue;
            }
            let idf = ((1.0 + n_docs) / (1.0 + df as f64)).ln() + 1.0;
            let score = best_tf * idf;
            if score >= threshold {
                out.insert(term, (score, df));
            }
        }
    }
    out
}

pub const TOY_VOCAB: [&str; 12] =
    ["merge", "sort", "array", "video", "frame", "signal", "red", "light", "car", "the", "a", "of"];

pub fn toy_corpus(rng: &mut ChaCha8Rng, max_docs: usize, max_tokens: usize) -> Vec<String> {
    let docs = rng.random_range(1..=max_docs);
    (0..docs)
        .map(|_| {
            let len = rng.random_range(1..=max_tokens);
            (0..len).map(|_| TOY_VOCAB[rng.random_range(0..TOY_VOCAB.len())]).collect::<Vec<_>>().join(" ")
        })
        .collect()
}

// ---- joint-table enumeration --------------------------------------------

/// Random normalized table with |V|, |T|, |Y| in 1..=4 (|Y| ≥ 2) and
/// multi-word summaries that share prefixes.
pub fn random_joint(rng: &mut ChaCha8Rng) -> JointSpec<f64> {
    let nv = rng.random_range(1..=4);
    let nt = rng.random_range(1..=4);
    let ny = rng.random_range(2..=4);
    let videos = (0..nv).map(|i| format!("v{i}")).collect();
    let pool = ["a b", "a c", "a b d", "e", "e f g", "c a"];
    let mut summaries: Vec<String> = Vec::new();
    while summaries.len() < nt {
        let s = pool[rng.random_range(0..pool.len())].to_string();
        if !summaries.contains(&s) {
            summaries.push(s);
        }
    }
    let labels = (0..ny).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
    let mut table: Vec<f64> =
        (0..nv * nt * ny).map(|_| if rng.random_bool(0.15) { 0.0 } else { rng.random_range(0.01..1.0) }).collect();
    if table.iter().all(|p| *p == 0.0) {
        table[0] = 1.0;
    }
    let z: f64 = table.iter().sum();
    table.iter_mut().for_each(|p| *p /= z);
    JointSpec::new(videos, summaries, labels, table, MaskChannel::Uninformative, MaskChannel::Uninformative)
        .expect("valid random joint")
}

/// `ln P(t | v) - ln P(t)`, by summing table cells.
pub fn pmi_video_summary(spec: &JointSpec<f64>, v: usize, t: usize) -> f64 {
    let (nv, nt, ny) = spec.dims();
    let p_vt: f64 = (0..ny).map(|y| spec.p(v, t, y)).sum();
    let p_v: f64 = (0..nt).flat_map(|t| (0..ny).map(move |y| (t, y))).map(|(t, y)| spec.p(v, t, y)).sum();
    let p_t: f64 = (0..nv).flat_map(|v| (0..ny).map(move |y| (v, y))).map(|(v, y)| spec.p(v, t, y)).sum();
    (p_vt / p_v).ln() - p_t.ln()
}

/// `ln P(y | t) - ln P(y)`.
pub fn pmi_summary_label(spec: &JointSpec<f64>, t: usize, y: usize) -> f64 {
    let (nv, nt, ny) = spec.dims();
    let p_ty: f64 = (0..nv).map(|v| spec.p(v, t, y)).sum();
    let p_t: f64 = (0..nv).flat_map(|v| (0..ny).map(move |y| (v, y))).map(|(v, y)| spec.p(v, t, y)).sum();
    let p_y: f64 = (0..nv).flat_map(|v| (0..nt).map(move |t| (v, t))).map(|(v, t)| spec.p(v, t, y)).sum();
    (p_ty / p_t).ln() - p_y.ln()
}

// ---- dominance ----------------------------------------------------------

/// Indices of points no other point weakly beats in both coordinates with one strict.
pub fn nondominated(points: &[(f64, f64)]) -> BTreeSet<usize> {
    (0..points.len())
        .filter(|&i| {
            let (g, u) = points[i];
            !points.iter().any(|&(g2, u2)| g2 >= g && u2 >= u && (g2 > g || u2 > u))
        })
        .collect()
}

/// A valid card with the given scores and an empty ledger.
pub fn card(id: &str, g: f64, u: f64) -> vibe_core::domain::ScoreCard<f64> {
    let mut c = vibe_core::domain::ScoreCard::invalid(id, "v", "test", "");
    c.grounding = g;
    c.utility = u;
    c.status = vibe_core::domain::CardStatus::Valid;
    c
}
