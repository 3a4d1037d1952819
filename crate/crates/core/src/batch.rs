//! Batch evaluation of knot tables with an on-disk report cache.
//!
//! Cache keys are the SHA-256 of the input's canonical JSON (object keys
//! sorted), so two requests that differ only in flag order share an entry.
//! Entries are written to a temporary file and renamed into place.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::knots::read_knot_table;
use crate::lambda::{lambda_sw, LambdaInput};
use crate::rational::{self, Rational};

pub const CACHE_ENV: &str = "LAMBDA_SW_CACHE";

/// Canonical JSON: the value re-serialized through `serde_json::Value`,
/// whose maps are ordered by key.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

pub fn cache_key(input: &LambdaInput) -> Result<String> {
    let canon = canonical_json(input)?;
    Ok(hex::encode(Sha256::digest(canon.as_bytes())))
}

#[derive(Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub report: Box<RawValue>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    /// `$LAMBDA_SW_CACHE`, else `$XDG_CACHE_HOME/lambda-sw`, else
    /// `$HOME/.cache/lambda-sw`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
            return Some(PathBuf::from(d).join("lambda-sw"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("lambda-sw"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached report text, or `None` on a miss or an unreadable entry.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then(|| entry.report.get().to_string())
    }

    pub fn put(&self, key: &str, report_json: &str) -> Result<()> {
        let entry = CacheEntry {
            key: key.to_string(),
            created: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            report: RawValue::from_string(report_json.to_string())?,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

/// Per-row parameters applied to every knot in a batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchOptions {
    pub h_dirac: u64,
    pub h_half: u64,
    pub r: Rational,
    pub chi: i64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            h_dirac: 0,
            h_half: 0,
            r: rational::int(1),
            chi: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub rows: usize,
    pub computed: usize,
    pub cache_hits: usize,
    pub errors: usize,
}

/// One output line of a batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchLine {
    pub json: String,
    pub ok: bool,
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    row: usize,
    name: &'a str,
    error: String,
}

/// The report text for one input, from the cache when possible.
fn report_text(
    input: &LambdaInput,
    cache: Option<&Cache>,
    computed: &AtomicUsize,
    hits: &AtomicUsize,
) -> Result<String> {
    let key = cache.map(|_| cache_key(input)).transpose()?;
    if let (Some(c), Some(k)) = (cache, key.as_deref()) {
        if let Some(text) = c.get(k) {
            hits.fetch_add(1, Ordering::Relaxed);
            return Ok(text);
        }
    }
    let report = lambda_sw(input)?;
    let text = serde_json::to_string(&report)?;
    computed.fetch_add(1, Ordering::Relaxed);
    if let (Some(c), Some(k)) = (cache, key.as_deref()) {
        c.put(k, &text)?;
    }
    Ok(text)
}

/// Evaluates every row of a knot table. Rows run in parallel; output order
/// follows the input, and a failing row yields an error object in place.
pub fn run_batch<R: Read>(
    table: R,
    options: &BatchOptions,
    cache: Option<&Cache>,
) -> Result<(Vec<BatchLine>, BatchSummary)> {
    let rows = read_knot_table(table)?;
    let computed = AtomicUsize::new(0);
    let hits = AtomicUsize::new(0);
    let lines: Vec<BatchLine> = rows
        .par_iter()
        .enumerate()
        .map(|(i, (label, row))| {
            let row_no = i + 1;
            let outcome = row.as_ref().map_err(|e| e.to_string()).and_then(|row| {
                let input = LambdaInput {
                    knot: row.presentation.clone(),
                    h_dirac: options.h_dirac,
                    h_half: options.h_half,
                    r: options.r.clone(),
                    chi: options.chi,
                };
                report_text(&input, cache, &computed, &hits).map_err(|e| e.to_string())
            });
            match outcome {
                Ok(report) => {
                    let name = serde_json::to_string(label).expect("string serializes");
                    BatchLine {
                        json: format!("{{\"row\":{row_no},\"name\":{name},\"report\":{report}}}"),
                        ok: true,
                    }
                }
                Err(error) => BatchLine {
                    json: serde_json::to_string(&ErrorLine {
                        row: row_no,
                        name: label,
                        error,
                    })
                    .expect("error line serializes"),
                    ok: false,
                },
            }
        })
        .collect();
    let summary = BatchSummary {
        rows: lines.len(),
        computed: computed.into_inner(),
        cache_hits: hits.into_inner(),
        errors: lines.iter().filter(|l| !l.ok).count(),
    };
    Ok((lines, summary))
}

/// Writes lines to `out` through a temporary file in the same directory.
pub fn write_lines(out: &Path, lines: &[BatchLine]) -> Result<()> {
    let dir = out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    for l in lines {
        writeln!(tmp, "{}", l.json)?;
    }
    tmp.flush()?;
    tmp.persist(out).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
