//! JSON-over-HTTP transports: live, recording, and offline replay.
//!
//! Fixtures are keyed by the SHA-256 of the canonical request (path plus the
//! body serialized with sorted keys) and stored as `<key>.json` holding the
//! request, redacted headers, and the raw response body.

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::ProviderError;

pub trait Transport: Send + Sync {
    /// Short description, e.g. `live`, `replay`.
    fn kind(&self) -> &str;

    /// POSTs `body` to `path` (relative to the endpoint) and returns the raw response body.
    fn post(&self, path: &str, body: &Value) -> Result<String, ProviderError>;
}

/// Stable key for a request.
pub fn request_key(path: &str, body: &Value) -> String {
    let mut h = Sha256::new();
    h.update(path.as_bytes());
    h.update([0]);
    // serde_json::Value maps are BTreeMaps, so this is key-sorted
    h.update(serde_json::to_string(body).expect("json body").as_bytes());
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self { max_attempts: 3, base_delay: Duration::from_millis(500) }
    }
}

impl RetryPolicy {
    /// Runs `op` until it succeeds, fails with a non-retryable error, or the
    /// attempt budget is spent. A successful response is returned untouched.
    pub fn run<T>(&self, mut op: impl FnMut() -> Result<T, ProviderError>) -> Result<T, ProviderError> {
        let attempts = self.max_attempts.max(1);
        let mut last = None;
        for attempt in 0..attempts {
            match op() {
                Ok(v) => return Ok(v),
                Err(e) if e.is_retryable() => {
                    log::warn!("attempt {} of {attempts} failed: {e}", attempt + 1);
                    last = Some(e);
                    if attempt + 1 < attempts {
                        thread::sleep(self.base_delay * 2u32.pow(attempt));
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Err(match last {
            Some(ProviderError::Network { message, .. }) => ProviderError::Network { attempts, message },
            Some(e) => e,
            None => unreachable!("at least one attempt"),
        })
    }
}

pub struct HttpTransport {
    client: reqwest::blocking::Client,
    base_url: String,
    api_key: Option<String>,
    retry: RetryPolicy,
}

impl HttpTransport {
    pub fn new(
        base_url: impl Into<String>,
        api_key: Option<String>,
        retry: RetryPolicy,
    ) -> Result<Self, ProviderError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(300))
            .build()
            .map_err(|e| ProviderError::Network { attempts: 0, message: e.to_string() })?;
        Ok(Self { client, base_url: base_url.into().trim_end_matches('/').to_string(), api_key, retry })
    }

    fn post_once(&self, url: &str, body: &Value) -> Result<String, ProviderError> {
        let mut req = self.client.post(url).json(body);
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let resp = req.send().map_err(|e| ProviderError::Network { attempts: 1, message: e.to_string() })?;
        let status = resp.status();
        let text = resp.text().map_err(|e| ProviderError::Network { attempts: 1, message: e.to_string() })?;
        if !status.is_success() {
            return Err(ProviderError::Http { status: status.as_u16(), body: text });
        }
        Ok(text)
    }
}

impl Transport for HttpTransport {
    fn kind(&self) -> &str {
        "live"
    }

    fn post(&self, path: &str, body: &Value) -> Result<String, ProviderError> {
        let url = format!("{}/{}", self.base_url, path.trim_start_matches('/'));
        self.retry.run(|| self.post_once(&url, body))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Fixture {
    path: String,
    headers: Value,
    request: Value,
    response_body: String,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> ProviderError {
    ProviderError::Io(format!("{}: {e}", path.display()))
}

/// Passes requests through to `inner` and writes each exchange to `dir`.
pub struct RecordingTransport<T> {
    inner: T,
    dir: PathBuf,
}

impl<T: Transport> RecordingTransport<T> {
    pub fn new(inner: T, dir: impl Into<PathBuf>) -> Result<Self, ProviderError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(Self { inner, dir })
    }
}

impl<T: Transport> Transport for RecordingTransport<T> {
    fn kind(&self) -> &str {
        "record"
    }

    fn post(&self, path: &str, body: &Value) -> Result<String, ProviderError> {
        let response_body = self.inner.post(path, body)?;
        let key = request_key(path, body);
        let fixture = Fixture {
            path: path.to_string(),
            headers: serde_json::json!({ "authorization": "[REDACTED]", "content-type": "application/json" }),
            request: body.clone(),
            response_body: response_body.clone(),
        };
        let file = self.dir.join(format!("{key}.json"));
        let text = serde_json::to_string_pretty(&fixture).expect("fixture serializes");
        fs::write(&file, text).map_err(|e| io_err(&file, e))?;
        log::debug!("recorded {path} -> {}", file.display());
        Ok(response_body)
    }
}

/// Serves recorded responses. An unseen request is an error; there is no live fallback.
pub struct ReplayTransport {
    dir: PathBuf,
}

impl ReplayTransport {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, ProviderError> {
        let dir = dir.into();
        if !dir.is_dir() {
            return Err(io_err(&dir, "fixture directory does not exist"));
        }
        Ok(Self { dir })
    }
}

impl Transport for ReplayTransport {
    fn kind(&self) -> &str {
        "replay"
    }

    fn post(&self, path: &str, body: &Value) -> Result<String, ProviderError> {
        let key = request_key(path, body);
        let file = self.dir.join(format!("{key}.json"));
        let text = match fs::read_to_string(&file) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(ProviderError::ReplayMiss { key }),
            Err(e) => return Err(io_err(&file, e)),
        };
        let fixture: Fixture = serde_json::from_str(&text).map_err(|e| io_err(&file, e))?;
        if fixture.path != path || fixture.request != *body {
            return Err(io_err(&file, "fixture does not match the request it is keyed by"));
        }
        Ok(fixture.response_body)
    }
}
