//! Prompt templates with named slots.
//!
//! A template is plain text with `{frames}`, `{masked_text}`, `{summary}`,
//! `{question}`, `{options}` and `{instruction}` placeholders. A line that
//! references a slot absent from the context is dropped, so one template
//! serves both the with- and without- variant of a call. The last line is
//! the answer cue; the scored target follows it after a single space.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::{ProviderError, ScoringContext, Slot};

pub const IMAGE_PLACEHOLDER: &str = "<image>";

const BUNDLED: [(&str, &str); 3] = [
    ("grounding-v1", include_str!("../../templates/grounding-v1.txt")),
    ("utility-v1", include_str!("../../templates/utility-v1.txt")),
    ("generation-v1", include_str!("../../templates/generation-v1.txt")),
];

const SLOTS: [(&str, Option<Slot>); 6] = [
    ("frames", None),
    ("masked_text", Some(Slot::MaskedText)),
    ("summary", Some(Slot::Summary)),
    ("question", Some(Slot::Question)),
    ("options", Some(Slot::Options)),
    ("instruction", Some(Slot::Instruction)),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    pub id: String,
    body: String,
}

impl PromptTemplate {
    pub fn parse(id: impl Into<String>, body: impl Into<String>) -> Result<Self, ProviderError> {
        let id = id.into();
        let body = body.into();
        let mut rest = body.as_str();
        while let Some(open) = rest.find('{') {
            let close =
                rest[open..].find('}').ok_or_else(|| ProviderError::Template(format!("{id}: unclosed placeholder")))?;
            let name = &rest[open + 1..open + close];
            if !SLOTS.iter().any(|(n, _)| *n == name) {
                return Err(ProviderError::Template(format!("{id}: unknown slot {{{name}}}")));
            }
            rest = &rest[open + close + 1..];
        }
        Ok(Self { id, body })
    }

    pub fn render(&self, ctx: &ScoringContext) -> String {
        let mut lines = Vec::new();
        'line: for line in self.body.lines() {
            let mut out = line.to_string();
            for (name, slot) in SLOTS {
                let key = format!("{{{name}}}");
                if !out.contains(&key) {
                    continue;
                }
                let value = match slot {
                    None => match &ctx.frames {
                        Some(f) if !f.paths.is_empty() => IMAGE_PLACEHOLDER.repeat(f.paths.len()),
                        _ => continue 'line,
                    },
                    Some(slot) => match ctx.block(slot) {
                        Some(v) => v.to_string(),
                        None => continue 'line,
                    },
                };
                out = out.replace(&key, &value);
            }
            lines.push(out);
        }
        lines.join("\n")
    }
}

/// Templates addressable by id: the bundled ones plus any loaded from disk.
#[derive(Debug, Clone)]
pub struct TemplateStore {
    templates: BTreeMap<String, PromptTemplate>,
}

impl Default for TemplateStore {
    fn default() -> Self {
        Self::bundled()
    }
}

impl TemplateStore {
    pub fn bundled() -> Self {
        let templates = BUNDLED
            .iter()
            .map(|(id, body)| (id.to_string(), PromptTemplate::parse(*id, *body).expect("bundled template")))
            .collect();
        Self { templates }
    }

    /// Adds every `*.txt` file in `dir`, keyed by file stem. Overrides bundled ids.
    pub fn load_dir(mut self, dir: &Path) -> Result<Self, ProviderError> {
        let mut entries: Vec<_> = fs::read_dir(dir)
            .map_err(|e| ProviderError::Template(format!("{}: {e}", dir.display())))?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        entries.sort();
        for path in entries {
            let id = path.file_stem().unwrap().to_string_lossy().into_owned();
            let body =
                fs::read_to_string(&path).map_err(|e| ProviderError::Template(format!("{}: {e}", path.display())))?;
            self.templates.insert(id.clone(), PromptTemplate::parse(id, body)?);
        }
        Ok(self)
    }

    pub fn get(&self, id: &str) -> Result<&PromptTemplate, ProviderError> {
        self.templates.get(id).ok_or_else(|| ProviderError::Template(format!("unknown template id {id:?}")))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.templates.keys().map(String::as_str)
    }
}
