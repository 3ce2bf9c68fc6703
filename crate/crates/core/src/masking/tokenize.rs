use crate::domain::MASK_TOKEN;

/// A word of the source text with its byte span and normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub start: usize,
    pub end: usize,
    pub norm: String,
}

impl Token {
    pub fn is_mask(&self) -> bool {
        self.norm == MASK_TOKEN
    }
}

/// Lowercases and splits on anything that is not alphanumeric, so punctuation
/// (including hyphens and apostrophes) separates words. A literal `<MASK>`
/// becomes its own opaque token that no keyword can match.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if c == '<' && text[i..].starts_with(MASK_TOKEN) {
            if let Some(s) = word_start.take() {
                tokens.push(word(text, s, i));
            }
            let end = i + MASK_TOKEN.len();
            tokens.push(Token { start: i, end, norm: MASK_TOKEN.to_string() });
            while iter.peek().is_some_and(|&(j, _)| j < end) {
                iter.next();
            }
            continue;
        }
        if c.is_alphanumeric() {
            word_start.get_or_insert(i);
        } else if let Some(s) = word_start.take() {
            tokens.push(word(text, s, i));
        }
    }
    if let Some(s) = word_start {
        tokens.push(word(text, s, text.len()));
    }
    tokens
}

fn word(text: &str, start: usize, end: usize) -> Token {
    Token { start, end, norm: text[start..end].to_lowercase() }
}

/// Normalized words only.
pub fn words(text: &str) -> Vec<String> {
    tokenize(text).into_iter().map(|t| t.norm).collect()
}

/// Canonical n-gram key for a phrase: normalized words joined by one space.
pub fn normalize_phrase(phrase: &str) -> String {
    words(phrase).join(" ")
}
