//! Reading, writing, fetching and comparing b-files in the two-column
//! "index value" format used by the On-Line Encyclopedia of Integer
//! Sequences.
//!
//! A small set of reference files ships with the crate so every comparison
//! works offline; fetching from the network is opt-in and cached atomically.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::{Error, Result};
use crate::exact::Int;

/// Sequence ids with a bundled reference file.
pub const FIXTURE_IDS: [&str; 7] = [
    "A000110", "A023998", "A001809", "A000296", "A006505", "A057837", "A057814",
];

/// The reference text bundled for `seq_id`, if any.
pub fn bundled_fixture(seq_id: &str) -> Option<&'static str> {
    match seq_id {
        "A000110" => Some(include_str!("../fixtures/b000110.txt")),
        "A023998" => Some(include_str!("../fixtures/b023998.txt")),
        "A001809" => Some(include_str!("../fixtures/b001809.txt")),
        "A000296" => Some(include_str!("../fixtures/b000296.txt")),
        "A006505" => Some(include_str!("../fixtures/b006505.txt")),
        "A057837" => Some(include_str!("../fixtures/b057837.txt")),
        "A057814" => Some(include_str!("../fixtures/b057814.txt")),
        _ => None,
    }
}

/// Require the canonical id shape: 'A' followed by exactly six digits.
pub fn validate_seq_id(seq_id: &str) -> Result<()> {
    let ok = seq_id.len() == 7
        && seq_id.starts_with('A')
        && seq_id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::BadSequenceId(seq_id.to_string()))
    }
}

/// A parsed b-file: one value per index over a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    seq_id: String,
    entries: Vec<(i64, Int)>,
}

impl BFile {
    pub fn seq_id(&self) -> &str {
        &self.seq_id
    }

    pub fn entries(&self) -> &[(i64, Int)] {
        &self.entries
    }

    pub fn first_index(&self) -> i64 {
        self.entries[0].0
    }

    pub fn last_index(&self) -> i64 {
        self.entries[self.entries.len() - 1].0
    }

    /// The value at an absolute index, if the file covers it.
    pub fn value_at(&self, index: i64) -> Option<&Int> {
        if index < self.first_index() || index > self.last_index() {
            return None;
        }
        let pos = (index - self.first_index()) as usize;
        Some(&self.entries[pos].1)
    }
}

/// Parse b-file text. Lines starting with '#' and blank lines are skipped;
/// every other line must hold exactly an index and an integer value, and the
/// indices must increase by one from line to line.
pub fn parse_bfile(seq_id: &str, text: &str) -> Result<BFile> {
    validate_seq_id(seq_id)?;
    let fail = |line: usize, reason: String| Error::BFileParse { line, reason };
    let mut entries: Vec<(i64, Int)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let index: i64 = parts
            .next()
            .expect("non-blank line has a first token")
            .parse()
            .map_err(|_| fail(line, "index is not an integer".into()))?;
        let value: Int = parts
            .next()
            .ok_or_else(|| fail(line, "missing value column".into()))?
            .parse()
            .map_err(|_| fail(line, "value is not an integer".into()))?;
        if parts.next().is_some() {
            return Err(fail(line, "more than two columns".into()));
        }
        if let Some((prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(fail(line, format!("index {index} does not follow {prev}")));
            }
        }
        entries.push((index, value));
    }
    if entries.is_empty() {
        return Err(fail(0, "no entries".into()));
    }
    Ok(BFile { seq_id: seq_id.to_string(), entries })
}

/// Render values as b-file text with indices starting at `start`.
pub fn emit_bfile(start: i64, values: &[Int]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("{} {v}\n", start + i as i64));
    }
    out
}

/// One disagreement between computed values and a reference file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub ours: Int,
    pub reference: Int,
}

/// Result of aligning a computed prefix against a reference file.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub seq_id: String,
    pub offset: i64,
    pub compared: usize,
    pub first_index: i64,
    pub last_index: i64,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare `ours[i]` against the reference value at index `offset + i` for
/// every index the file covers. At least one index must be covered.
pub fn compare(ours: &[Int], offset: i64, bfile: &BFile) -> Result<CompareReport> {
    let mut compared = 0usize;
    let mut first = i64::MAX;
    let mut last = i64::MIN;
    let mut mismatches = Vec::new();
    for (i, value) in ours.iter().enumerate() {
        let index = offset + i as i64;
        let Some(reference) = bfile.value_at(index) else { continue };
        compared += 1;
        first = first.min(index);
        last = last.max(index);
        if value != reference {
            mismatches.push(Mismatch {
                index,
                ours: value.clone(),
                reference: reference.clone(),
            });
        }
    }
    if compared == 0 {
        return Err(Error::EmptyOverlap);
    }
    Ok(CompareReport {
        seq_id: bfile.seq_id().to_string(),
        offset,
        compared,
        first_index: first,
        last_index: last,
        mismatches,
    })
}

/// Where a fetched file for `seq_id` lives under `cache_dir`.
pub fn cache_path(cache_dir: &Path, seq_id: &str) -> PathBuf {
    cache_dir.join(format!("b{}.txt", &seq_id[1..]))
}

/// Return b-file text for `seq_id`, preferring a valid cached copy and
/// downloading otherwise. Downloads are parsed before being cached, and the
/// cache write goes through a rename so a crash never leaves junk behind.
pub fn fetch(seq_id: &str, cache_dir: &Path) -> Result<String> {
    validate_seq_id(seq_id)?;
    let path = cache_path(cache_dir, seq_id);
    if let Ok(text) = fs::read_to_string(&path) {
        if parse_bfile(seq_id, &text).is_ok() {
            return Ok(text);
        }
    }
    let url = format!("https://oeis.org/{seq_id}/b{}.txt", &seq_id[1..]);
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(30))
        .build()
        .map_err(|e| Error::Network(e.to_string()))?;
    let resp = client
        .get(&url)
        .send()
        .map_err(|e| Error::Network(e.to_string()))?;
    if !resp.status().is_success() {
        return Err(Error::HttpStatus { status: resp.status().as_u16(), url });
    }
    let text = resp.text().map_err(|e| Error::Network(e.to_string()))?;
    parse_bfile(seq_id, &text)?;
    fs::create_dir_all(cache_dir)?;
    let partial = path.with_extension("txt.partial");
    fs::write(&partial, &text)?;
    fs::rename(&partial, &path)?;
    Ok(text)
}
