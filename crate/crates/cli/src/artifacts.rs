//! The output directory: provenance headers, staged writes, and reads of
//! earlier stages' files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use vibe_core::jsonl;

use crate::error::CliError;

/// What produced an artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub config_hash: String,
    pub templates: String,
}

impl Provenance {
    /// `#` comment lines for CSV and JSONL files.
    pub fn hash_lines(&self) -> String {
        format!("# config_hash={}\n# templates={}\n", self.config_hash, self.templates)
    }

    /// A single XML/markdown comment line.
    pub fn comment(&self) -> String {
        format!("<!-- config_hash={} templates={} -->\n", self.config_hash, self.templates)
    }
}

/// Files a stage produces, held in memory until the stage has finished.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    pub fn push(&mut self, rel: impl Into<PathBuf>, bytes: impl Into<Vec<u8>>) {
        self.files.push((rel.into(), bytes.into()));
    }

    pub fn names(&self) -> impl Iterator<Item = &Path> {
        self.files.iter().map(|(p, _)| p.as_path())
    }
}

pub struct OutDir {
    pub root: PathBuf,
    pub prov: Provenance,
}

impl OutDir {
    pub fn new(root: impl Into<PathBuf>, prov: Provenance) -> Self {
        Self { root: root.into(), prov }
    }

    pub fn path(&self, rel: impl AsRef<Path>) -> PathBuf {
        self.root.join(rel)
    }

    pub fn exists(&self, rel: impl AsRef<Path>) -> bool {
        self.path(rel).is_file()
    }

    /// Path of an earlier stage's artifact, or the exit-2 error naming that stage.
    pub fn require(&self, rel: &str, stage: &'static str) -> Result<PathBuf, CliError> {
        let p = self.path(rel);
        if p.is_file() {
            Ok(p)
        } else {
            Err(CliError::MissingDependency { path: p, stage })
        }
    }

    /// Reads a JSONL artifact, skipping its header lines. Line numbers in errors
    /// refer to the file as written.
    pub fn read_records<T: DeserializeOwned>(&self, rel: &str, stage: &'static str) -> Result<Vec<T>, CliError> {
        let path = self.require(rel, stage)?;
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        if let Some(hash) = text.lines().find_map(|l| l.strip_prefix("# config_hash=")) {
            if hash != self.prov.config_hash {
                log::warn!("{} was produced under config {hash}, current is {}", path.display(), self.prov.config_hash);
            }
        }
        let blanked: String =
            text.lines().map(|l| if l.starts_with('#') { "" } else { l }).collect::<Vec<_>>().join("\n");
        Ok(jsonl::parse(blanked.as_bytes(), &path)?)
    }

    /// JSONL body with the provenance header.
    pub fn jsonl<T: Serialize>(&self, records: &[T]) -> String {
        self.prov.hash_lines() + &jsonl::to_string(records)
    }

    /// CSV body produced by `write` with the provenance header.
    pub fn csv(&self, write: impl FnOnce(&mut Vec<u8>) -> csv::Result<()>) -> Result<Vec<u8>, CliError> {
        let mut buf = self.prov.hash_lines().into_bytes();
        write(&mut buf).map_err(|e| CliError::io(&self.root, e))?;
        Ok(buf)
    }

    pub fn svg(&self, body: &str) -> String {
        self.prov.comment() + body
    }

    /// Writes every output through a temporary file and a rename, so a reader
    /// never sees a half-written artifact.
    pub fn commit(&self, outputs: Outputs) -> Result<Vec<PathBuf>, CliError> {
        let mut written = Vec::with_capacity(outputs.files.len());
        for (rel, bytes) in outputs.files {
            let path = self.path(&rel);
            let dir = path.parent().unwrap_or(&self.root);
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            let tmp =
                path.with_extension(format!("{}.tmp", path.extension().and_then(|e| e.to_str()).unwrap_or_default()));
            fs::write(&tmp, &bytes).map_err(|e| CliError::io(&tmp, e))?;
            fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}
