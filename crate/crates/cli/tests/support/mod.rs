//! Runs the `vibe` binary against the bundled mini fixture.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const STAGES: [&str; 7] = ["keywords", "mask", "score", "select", "sweep", "stats", "report"];

/// Files compared byte-for-byte against `tests/golden`.
pub const GOLDEN: [&str; 7] =
    ["scorecards.csv", "scorecards.jsonl", "sweep.csv", "frontier.csv", "selection.csv", "report.md", "study_table.csv"];

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini")
}

pub fn fixture_config() -> PathBuf {
    fixture_dir().join("vibe.toml")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn vibe(config: &Path, out: &Path, args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vibe"));
    cmd.arg("--config").arg(config).arg("--out").arg(out).args(args);
    cmd.env("RUST_LOG", "error").env_remove("VIBE_API_KEY").env_remove("VIBE_ENDPOINT");
    cmd
}

pub fn run(config: &Path, out: &Path, args: &[&str]) -> Output {
    vibe(config, out, args).output().expect("spawn vibe")
}

/// Runs `args` and panics with stderr unless it succeeds.
pub fn run_ok(config: &Path, out: &Path, args: &[&str]) {
    let o = run(config, out, args);
    assert!(o.status.success(), "vibe {args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
}

pub fn pipeline(config: &Path, out: &Path) {
    for s in STAGES {
        run_ok(config, out, &[s]);
    }
}

/// Every file under `dir`, keyed by relative path.
pub fn snapshot(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&p).unwrap());
            }
        }
    }
    out
}

/// Text after the provenance header lines.
pub fn body(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("# ") && !l.starts_with("<!--")).collect::<Vec<_>>().join("\n")
}

/// `(candidate_id, video_id, grounding, utility)` rows of a scorecards.csv.
pub fn card_rows(csv_text: &str) -> Vec<(String, String, f64, f64)> {
    let data: String = csv_text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(data.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[0].to_string(), rec[4].to_string(), rec[1].parse().unwrap(), rec[2].parse().unwrap())
        })
        .collect()
}

/// Compares `out` with the golden files; `VIBE_BLESS=1` rewrites them instead.
pub fn golden_mismatches(out: &Path) -> Vec<String> {
    let bless = std::env::var("VIBE_BLESS").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for name in GOLDEN {
        let got = fs::read(out.join(name)).unwrap_or_default();
        let want_path = golden_dir().join(name);
        if bless {
            fs::write(&want_path, &got).unwrap();
            continue;
        }
        if fs::read(&want_path).ok().as_deref() != Some(got.as_slice()) {
            bad.push(name.to_string());
        }
    }
    bad
}
