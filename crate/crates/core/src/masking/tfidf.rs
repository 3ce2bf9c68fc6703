//! Corpus tf-idf keyword extraction over word n-grams.
//!
//! * `tf(t, d)`: occurrences of `t` in `d` over the number of n-grams of the same order in `d`
//! * `idf(t)`: `ln((1 + N) / (1 + df(t))) + 1`
//! * corpus score: maximum of `tf · idf` over documents
//!
//! Terms whose document frequency exceeds `doc_freq_cutoff · N` are discarded
//! before thresholding.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::tokenize::{normalize_phrase, words};
use super::MaskingError;
use crate::num::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TfidfConfig<F> {
    pub ngram_min: usize,
    pub ngram_max: usize,
    #[serde(with = "crate::domain::float_tag")]
    pub doc_freq_cutoff: F,
    #[serde(with = "crate::domain::float_tag")]
    pub score_threshold: F,
    /// Phrases masked regardless of their corpus statistics.
    #[serde(default)]
    pub extra_keywords: Vec<String>,
}

impl<F: Scalar> TfidfConfig<F> {
    pub fn new(doc_freq_cutoff: F, score_threshold: F) -> Self {
        Self { ngram_min: 1, ngram_max: 3, doc_freq_cutoff, score_threshold, extra_keywords: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), MaskingError> {
        if self.ngram_min == 0 || self.ngram_min > self.ngram_max {
            return Err(MaskingError::InvalidConfig(format!(
                "n-gram range {}..={} is empty",
                self.ngram_min, self.ngram_max
            )));
        }
        if !(self.doc_freq_cutoff > F::zero() && self.doc_freq_cutoff <= F::one()) {
            return Err(MaskingError::InvalidConfig(format!(
                "doc_freq_cutoff {} outside (0, 1]",
                self.doc_freq_cutoff
            )));
        }
        if !(self.score_threshold >= F::zero()) {
            return Err(MaskingError::InvalidConfig(format!("score_threshold {} is negative", self.score_threshold)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct KeywordTerm<F> {
    pub ngram: String,
    #[serde(with = "crate::domain::float_tag")]
    pub score: F,
    pub doc_freq: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct KeywordSet<F> {
    pub keyword_set_id: String,
    /// Sorted by descending score, then n-gram.
    pub terms: Vec<KeywordTerm<F>>,
    /// Normalized extra keywords not already among `terms`.
    #[serde(default)]
    pub provided: Vec<String>,
    pub corpus_fingerprint: String,
}

impl<F: Scalar> KeywordSet<F> {
    /// Builds a set directly from phrases, e.g. a hand-curated list.
    pub fn from_phrases<S: AsRef<str>>(id: impl Into<String>, phrases: &[S]) -> Self {
        let mut provided: Vec<String> =
            phrases.iter().map(|p| normalize_phrase(p.as_ref())).filter(|p| !p.is_empty()).collect();
        provided.sort();
        provided.dedup();
        Self { keyword_set_id: id.into(), terms: Vec::new(), provided, corpus_fingerprint: String::new() }
    }

    /// Every masked n-gram, tf-idf terms first.
    pub fn ngrams(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.ngram.as_str()).chain(self.provided.iter().map(String::as_str))
    }

    pub fn len(&self) -> usize {
        self.terms.len() + self.provided.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns a copy with extra phrases added to `provided` under a derived id.
    pub fn with_extra<S: AsRef<str>>(&self, extra: &[S]) -> Self {
        let mut out = self.clone();
        for p in extra {
            let p = normalize_phrase(p.as_ref());
            if !p.is_empty() && !out.ngrams().any(|g| g == p) {
                out.provided.push(p);
            }
        }
        out.provided.sort();
        out.provided.dedup();
        if out.provided != self.provided {
            let mut h = Sha256::new();
            h.update(self.keyword_set_id.as_bytes());
            for p in &out.provided {
                h.update([0x1f]);
                h.update(p.as_bytes());
            }
            out.keyword_set_id = hex::encode(&h.finalize()[..8]);
        }
        out
    }

    /// CSV with header `ngram,score,doc_freq`; provided keywords have empty statistics.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["ngram", "score", "doc_freq"])?;
        for t in &self.terms {
            out.write_record([t.ngram.clone(), t.score.to_string(), t.doc_freq.to_string()])?;
        }
        for p in &self.provided {
            out.write_record([p.as_str(), "", ""])?;
        }
        out.flush()?;
        Ok(())
    }
}

fn fingerprint<S: AsRef<str>>(corpus: &[S]) -> String {
    let mut h = Sha256::new();
    for d in corpus {
        let d = d.as_ref().as_bytes();
        h.update((d.len() as u64).to_le_bytes());
        h.update(d);
    }
    hex::encode(h.finalize())
}

/// Extracts keywords from `corpus`, where each entry is one document.
pub fn extract_keywords<F: Scalar, S: AsRef<str>>(
    corpus: &[S],
    config: &TfidfConfig<F>,
) -> Result<KeywordSet<F>, MaskingError> {
    if corpus.is_empty() {
        return Err(MaskingError::EmptyCorpus);
    }
    config.validate()?;
    let n_docs = corpus.len();
    let docs: Vec<Vec<String>> = corpus.iter().map(|d| words(d.as_ref())).collect();

    // n-gram -> per-document relative frequency (only documents containing it)
    let mut tf: BTreeMap<String, Vec<F>> = BTreeMap::new();
    for doc in &docs {
        for n in config.ngram_min..=config.ngram_max {
            if doc.len() < n {
                continue;
            }
            let total = doc.len() - n + 1;
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for w in doc.windows(n) {
                *counts.entry(w.join(" ")).or_default() += 1;
            }
            let denom = F::from_usize_lossy(total);
            for (gram, c) in counts {
                tf.entry(gram).or_default().push(F::from_usize_lossy(c) / denom);
            }
        }
    }

    let n_f = F::from_usize_lossy(n_docs);
    let mut terms = Vec::new();
    for (ngram, freqs) in tf {
        let df = freqs.len();
        if F::from_usize_lossy(df) / n_f > config.doc_freq_cutoff {
            continue;
        }
        let idf = ((F::one() + n_f) / (F::one() + F::from_usize_lossy(df))).ln() + F::one();
        let best = freqs.iter().fold(F::neg_infinity(), |m, &f| m.max(f));
        let score = best * idf;
        if score >= config.score_threshold {
            terms.push(KeywordTerm { ngram, score, doc_freq: df });
        }
    }
    terms.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap().then_with(|| a.ngram.cmp(&b.ngram)));

    let corpus_fingerprint = fingerprint(corpus);
    let mut h = Sha256::new();
    h.update(corpus_fingerprint.as_bytes());
    h.update(
        format!("{}:{}:{}:{}", config.ngram_min, config.ngram_max, config.doc_freq_cutoff, config.score_threshold)
            .as_bytes(),
    );
    let base =
        KeywordSet { keyword_set_id: hex::encode(&h.finalize()[..8]), terms, provided: Vec::new(), corpus_fingerprint };
    Ok(base.with_extra(&config.extra_keywords))
}
