//! Line-delimited JSON cache of factorizations and verdicts.
//!
//! One entry per line: `{"kind": "factorization" | "verdict", "key": ..., "payload": ...}`.
//! Factorizations are keyed by their value, verdicts by `a,n`. Loading
//! rejects the whole file on the first malformed line and keeps the first
//! copy of a duplicated key. Writes append under an exclusive lock.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sumsq_core::arith::Factorization;
use sumsq_core::classifier::{ClassificationRecord, Classifier};
use sumsq_core::two_squares::Status;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path}, line {line}: {reason}")]
    Malformed { path: PathBuf, line: usize, reason: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Entry {
    Factorization { key: String, payload: Factorization },
    Verdict { key: String, payload: ClassificationRecord },
}

type Key = (&'static str, String);

impl Entry {
    fn key(&self) -> Key {
        match self {
            Entry::Factorization { key, .. } => ("factorization", key.clone()),
            Entry::Verdict { key, .. } => ("verdict", key.clone()),
        }
    }

    fn expected_key(&self) -> String {
        match self {
            Entry::Factorization { payload, .. } => payload.value.to_string(),
            Entry::Verdict { payload, .. } => verdict_key(payload),
        }
    }
}

fn verdict_key(r: &ClassificationRecord) -> String {
    format!("{},{}", r.a, r.n)
}

pub struct Cache {
    path: PathBuf,
    known: HashSet<Key>,
}

/// `$XDG_CACHE_HOME/sumsq/cache.jsonl`, falling back to `~/.cache`.
pub fn default_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("sumsq").join("cache.jsonl"))
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

/// Parses every line, returning `(line number, entry)` in file order with
/// duplicates dropped.
fn parse(path: &Path, bytes: &[u8]) -> Result<Vec<(usize, Entry)>, CacheError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let bad = |reason: String| CacheError::Malformed { path: path.to_path_buf(), line: i + 1, reason };
        let text = std::str::from_utf8(raw).map_err(|e| bad(format!("not UTF-8: {e}")))?;
        let text = text.trim_end_matches('\r');
        if text.trim().is_empty() {
            continue;
        }
        let entry: Entry = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let key = entry.key();
        if key.1 != entry.expected_key() {
            return Err(bad(format!("key {:?} does not match payload {:?}", key.1, entry.expected_key())));
        }
        if seen.insert(key) {
            out.push((i + 1, entry));
        }
    }
    Ok(out)
}

impl Cache {
    /// Reads `path` (a missing file is an empty cache) and seeds the
    /// classifier. Every payload is re-checked; unknown verdicts are skipped.
    pub fn load(path: &Path, classifier: &Classifier) -> Result<Cache, CacheError> {
        let mut cache = Cache { path: path.to_path_buf(), known: HashSet::new() };
        let mut file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(io_err(path)(e)),
        };
        file.lock_shared().map_err(io_err(path))?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes).map_err(io_err(path))?;
        file.unlock().map_err(io_err(path))?;
        for (line, entry) in parse(path, &bytes)? {
            let key = entry.key();
            let checked = match entry {
                Entry::Factorization { payload, .. } => classifier.insert_factorization(payload),
                Entry::Verdict { payload, .. } if payload.status == Status::Unknown => Ok(()),
                Entry::Verdict { payload, .. } => classifier.insert_record(payload),
            };
            checked.map_err(|e| CacheError::Malformed {
                path: path.to_path_buf(),
                line,
                reason: e.to_string(),
            })?;
            cache.known.insert(key);
        }
        Ok(cache)
    }

    /// Appends whatever the classifier learned that the file lacks.
    /// Returns the number of lines written.
    pub fn persist(&mut self, classifier: &Classifier) -> Result<usize, CacheError> {
        let mut fresh: Vec<Entry> = Vec::new();
        for f in classifier.factorizations() {
            let key = f.value.to_string();
            if !self.known.contains(&("factorization", key.clone())) {
                fresh.push(Entry::Factorization { key, payload: f });
            }
        }
        for r in classifier.records().into_iter().filter(|r| r.status != Status::Unknown) {
            let key = verdict_key(&r);
            if !self.known.contains(&("verdict", key.clone())) {
                fresh.push(Entry::Verdict { key, payload: r });
            }
        }
        if fresh.is_empty() {
            return Ok(0);
        }
        let path = self.path.clone();
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io_err(&path))?;
        }
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&path)
            .map_err(io_err(&path))?;
        file.lock().map_err(io_err(&path))?;
        // Another process may have appended since we loaded.
        let mut bytes = Vec::new();
        file.seek(SeekFrom::Start(0)).map_err(io_err(&path))?;
        file.read_to_end(&mut bytes).map_err(io_err(&path))?;
        let on_disk: HashSet<Key> = parse(&path, &bytes)?.iter().map(|(_, e)| e.key()).collect();
        let mut out = String::new();
        if !bytes.is_empty() && !bytes.ends_with(b"\n") {
            out.push('\n');
        }
        let mut written = 0;
        for entry in fresh {
            let key = entry.key();
            if !on_disk.contains(&key) {
                out.push_str(&serde_json::to_string(&entry).expect("entries serialize"));
                out.push('\n');
                written += 1;
            }
            self.known.insert(key);
        }
        file.write_all(out.as_bytes()).map_err(io_err(&path))?;
        file.flush().map_err(io_err(&path))?;
        file.unlock().map_err(io_err(&path))?;
        Ok(written)
    }
}
