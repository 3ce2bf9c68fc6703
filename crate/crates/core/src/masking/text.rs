use std::collections::{BTreeMap, HashSet};

use super::tfidf::KeywordSet;
use super::tokenize::{tokenize, Token};
use super::MaskingError;
use crate::domain::{MaskedSpan, MaskedText, MASK_TOKEN};
use crate::num::Scalar;

/// Keyword n-grams indexed by length for window matching.
#[derive(Debug, Clone, Default)]
pub struct KeywordMatcher {
    by_len: BTreeMap<usize, HashSet<String>>,
}

impl KeywordMatcher {
    pub fn new<'a>(ngrams: impl IntoIterator<Item = &'a str>) -> Self {
        let mut by_len: BTreeMap<usize, HashSet<String>> = BTreeMap::new();
        for g in ngrams {
            let n = g.split(' ').count();
            if !g.is_empty() {
                by_len.entry(n).or_default().insert(g.to_string());
            }
        }
        Self { by_len }
    }

    pub fn from_keywords<F: Scalar>(keywords: &KeywordSet<F>) -> Self {
        Self::new(keywords.ngrams())
    }

    /// All `(start, len)` windows of `norms` equal to a keyword, in scan order.
    pub fn matches<S: AsRef<str>>(&self, norms: &[S]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..norms.len() {
            for (&len, set) in &self.by_len {
                if start + len > norms.len() {
                    break;
                }
                let window = &norms[start..start + len];
                if window.iter().any(|w| w.as_ref() == MASK_TOKEN) {
                    continue;
                }
                let key = window.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
                if set.contains(&key) {
                    out.push((start, len));
                }
            }
        }
        out
    }

    /// Non-overlapping selection: longer matches first, earlier start on equal length.
    /// Returned in text order.
    pub fn select<S: AsRef<str>>(&self, norms: &[S]) -> Vec<(usize, usize)> {
        let mut found = self.matches(norms);
        found.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut taken = vec![false; norms.len()];
        let mut chosen = Vec::new();
        for (start, len) in found {
            if taken[start..start + len].iter().any(|&t| t) {
                continue;
            }
            taken[start..start + len].iter_mut().for_each(|t| *t = true);
            chosen.push((start, len));
        }
        chosen.sort_unstable();
        chosen
    }
}

/// Replaces every keyword occurrence in raw `text` with `<MASK>`.
pub fn mask_text<F: Scalar>(text: &str, keywords: &KeywordSet<F>) -> Result<MaskedText, MaskingError> {
    if text.trim().is_empty() {
        return Err(MaskingError::EmptyText);
    }
    if text.contains(MASK_TOKEN) {
        return Err(MaskingError::ReservedToken);
    }
    let (masked, spans) = mask_with(text, &KeywordMatcher::from_keywords(keywords));
    Ok(MaskedText { text: masked, masked_spans: spans, keyword_set_id: keywords.keyword_set_id.clone() })
}

impl MaskedText {
    /// Masks an already-masked text again. Existing `<MASK>` tokens are kept;
    /// with the keyword set that produced `self` this is a no-op.
    pub fn remask<F: Scalar>(&self, keywords: &KeywordSet<F>) -> MaskedText {
        let (text, spans) = mask_with(&self.text, &KeywordMatcher::from_keywords(keywords));
        let mut masked_spans = self.masked_spans.clone();
        masked_spans.extend(spans);
        MaskedText { text, masked_spans, keyword_set_id: keywords.keyword_set_id.clone() }
    }
}

fn mask_with(text: &str, matcher: &KeywordMatcher) -> (String, Vec<MaskedSpan>) {
    let tokens: Vec<Token> = tokenize(text);
    let norms: Vec<&str> = tokens.iter().map(|t| t.norm.as_str()).collect();
    let mut out = String::with_capacity(text.len());
    let mut spans = Vec::new();
    let mut cursor = 0;
    for (start, len) in matcher.select(&norms) {
        let (s, e) = (tokens[start].start, tokens[start + len - 1].end);
        out.push_str(&text[cursor..s]);
        out.push_str(MASK_TOKEN);
        spans.push(MaskedSpan { start: s, end: e, original: text[s..e].to_string() });
        cursor = e;
    }
    out.push_str(&text[cursor..]);
    (out, spans)
}

/// Number of keyword windows still present in `text`, at word granularity.
pub fn count_keyword_occurrences<F: Scalar>(text: &str, keywords: &KeywordSet<F>) -> usize {
    let norms: Vec<String> = tokenize(text).into_iter().map(|t| t.norm).collect();
    KeywordMatcher::from_keywords(keywords).matches(&norms).len()
}
