//! Persistent memo cache: an append-only JSON-lines file.
//!
//! The first line is a header carrying the engine's convention fingerprint;
//! a file written under different bookkeeping conventions is refused rather
//! than silently trusted. Corrupt lines are skipped with a warning.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use torushom_core::recursion::{convention_fingerprint, MemoTable};
use torushom_core::symmetric::State;

use crate::formats::MemoRecordJson;

pub const ENV_CACHE: &str = "TORUSHOM_CACHE";

#[derive(Debug)]
pub enum CacheError {
    FingerprintMismatch { found: String, expected: String },
    Io(std::io::Error),
    Header(String),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::FingerprintMismatch { found, expected } => write!(
                f,
                "cache fingerprint mismatch: file has {found}, engine expects {expected}"
            ),
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Header(msg) => write!(f, "bad cache header: {msg}"),
        }
    }
}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    fingerprint: String,
}

const FORMAT_NAME: &str = "torushom-memo-v1";

/// Resolve the cache path: `--cache` flag first, then the environment.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(ENV_CACHE).map(PathBuf::from))
}

/// A loaded cache: the memo entries plus the set of keys already on disk
/// (so that saving appends only new entries).
#[derive(Debug)]
pub struct Cache {
    pub path: PathBuf,
    pub loaded: BTreeSet<State>,
    pub skipped_lines: usize,
}

impl Cache {
    /// Load a cache file into `memo`. A missing file yields an empty cache.
    pub fn load(path: &Path, memo: &mut MemoTable) -> Result<Cache, CacheError> {
        let mut cache = Cache {
            path: path.to_path_buf(),
            loaded: BTreeSet::new(),
            skipped_lines: 0,
        };
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        let mut lines = text.lines();
        let header_line = match lines.next() {
            Some(line) if !line.trim().is_empty() => line,
            _ => return Ok(cache), // empty file: empty table
        };
        let header: Header = serde_json::from_str(header_line)
            .map_err(|e| CacheError::Header(format!("{e}")))?;
        if header.format != FORMAT_NAME {
            return Err(CacheError::Header(format!(
                "unknown format '{}'",
                header.format
            )));
        }
        let expected = convention_fingerprint();
        if header.fingerprint != expected {
            return Err(CacheError::FingerprintMismatch {
                found: header.fingerprint,
                expected,
            });
        }
        for (idx, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Option<(State, _)> = serde_json::from_str::<MemoRecordJson>(line)
                .ok()
                .and_then(|rec| rec.into_entry().ok());
            match parsed {
                Some((state, value)) => {
                    cache.loaded.insert(state.clone());
                    memo.insert(state, value);
                }
                None => {
                    eprintln!("warning: skipping corrupt cache line {}", idx + 2);
                    cache.skipped_lines += 1;
                }
            }
        }
        Ok(cache)
    }

    /// Append entries of `memo` that were not already on disk. Writes the
    /// header first when creating a fresh file.
    pub fn save(&self, memo: &MemoTable) -> Result<usize, CacheError> {
        let fresh = !self.path.exists();
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        if fresh {
            let header = Header {
                format: FORMAT_NAME.to_string(),
                fingerprint: convention_fingerprint(),
            };
            writeln!(file, "{}", serde_json::to_string(&header).unwrap())?;
        }
        let mut appended = 0;
        for (state, value) in memo.iter() {
            if self.loaded.contains(state) {
                continue;
            }
            let record = MemoRecordJson::from_entry(state, value);
            writeln!(file, "{}", serde_json::to_string(&record).unwrap())?;
            appended += 1;
        }
        Ok(appended)
    }
}
