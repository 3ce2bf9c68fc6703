//! Line-delimited JSON records: one object per line, blank lines ignored.

use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Schema { path: PathBuf, line: usize, message: String },
}

impl RecordError {
    pub fn schema(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Self::Schema { path: path.into(), line, message: message.into() }
    }
}

/// Parses records from a reader. `origin` names the source in error messages.
pub fn parse<T: DeserializeOwned, R: Read>(reader: R, origin: &Path) -> Result<Vec<T>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|source| RecordError::Io { path: origin.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|e| RecordError::schema(origin, i + 1, e.to_string()))?;
        out.push(value);
    }
    Ok(out)
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, RecordError> {
    let file = fs::File::open(path).map_err(|source| RecordError::Io { path: path.to_path_buf(), source })?;
    parse(file, path)
}

/// Like [`read`] but each record carries its 1-based line number.
pub fn read_numbered<T: DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>, RecordError> {
    let text = fs::read_to_string(path).map_err(|source| RecordError::Io { path: path.to_path_buf(), source })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(line).map_err(|e| RecordError::schema(path, i + 1, e.to_string()))?;
        out.push((i + 1, value));
    }
    Ok(out)
}

pub fn to_string<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn write<T: Serialize>(path: &Path, records: &[T]) -> Result<(), RecordError> {
    let io_err = |source| RecordError::Io { path: path.to_path_buf(), source };
    let mut f = fs::File::create(path).map_err(io_err)?;
    f.write_all(to_string(records).as_bytes()).map_err(io_err)
}
