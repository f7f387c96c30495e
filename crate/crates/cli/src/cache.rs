//! Append-only JSONL verdict cache.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use symreg::regseq::Strategy;

use crate::record::ResultRecord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    family: String,
    degrees: Vec<u64>,
    strict: bool,
}

#[derive(Serialize, Deserialize)]
struct Line {
    strategy: String,
    #[serde(flatten)]
    record: ResultRecord,
}

/// The index is loaded once; later writes go to both the file and the index.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    file: Option<File>,
    index: HashMap<Key, ResultRecord>,
    skipped: usize,
}

fn key(family: &str, degrees: &[u64], strategy: Strategy) -> Key {
    Key {
        family: family.to_string(),
        degrees: degrees.to_vec(),
        strict: strategy == Strategy::Strict,
    }
}

impl Cache {
    /// A cache that remembers nothing.
    pub fn disabled() -> Self {
        Cache::default()
    }

    /// Load `path` if it exists; unreadable lines are skipped with a warning.
    pub fn open(path: &Path) -> Result<Self> {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            ..Cache::default()
        };
        if path.exists() {
            let f = File::open(path).with_context(|| format!("reading cache {}", path.display()))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line.with_context(|| format!("reading cache {}", path.display()))?;
                if line.trim().is_empty() {
                    continue;
                }
                match parse_line(&line) {
                    Some((k, r)) => {
                        cache.index.insert(k, r);
                    }
                    None => {
                        log::warn!("{}:{}: skipping corrupt cache line", path.display(), i + 1);
                        cache.skipped += 1;
                    }
                }
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Corrupt lines seen while loading.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// A strict record answers both strict and fast lookups; a fast record
    /// answers only fast ones.
    pub fn get(&self, family: &str, degrees: &[u64], strategy: Strategy) -> Option<&ResultRecord> {
        self.index
            .get(&key(family, degrees, Strategy::Strict))
            .or_else(|| match strategy {
                Strategy::Fast => self.index.get(&key(family, degrees, Strategy::Fast)),
                Strategy::Strict => None,
            })
    }

    pub fn put(&mut self, record: &ResultRecord, strategy: Strategy) -> Result<()> {
        if let Some(path) = &self.path {
            if self.file.is_none() {
                let f = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .with_context(|| format!("opening cache {}", path.display()))?;
                self.file = Some(f);
                if !ends_with_newline(path)? {
                    writeln!(self.file.as_mut().expect("opened above"))?;
                }
            }
            let line = serde_json::to_string(&Line {
                strategy: strategy.as_str().to_string(),
                record: record.clone(),
            })?;
            let f = self.file.as_mut().expect("opened above");
            writeln!(f, "{line}").with_context(|| format!("writing cache {}", path.display()))?;
            f.flush()?;
        }
        self.index
            .insert(key(&record.family, &record.degrees, strategy), record.clone());
        Ok(())
    }
}

/// True for an empty file too, so nothing is prepended to a fresh cache.
fn ends_with_newline(path: &Path) -> Result<bool> {
    use std::io::{Read, Seek, SeekFrom};
    let mut f = File::open(path)?;
    if f.metadata()?.len() == 0 {
        return Ok(true);
    }
    f.seek(SeekFrom::End(-1))?;
    let mut last = [0u8];
    f.read_exact(&mut last)?;
    Ok(last[0] == b'\n')
}

fn parse_line(line: &str) -> Option<(Key, ResultRecord)> {
    let l: Line = serde_json::from_str(line).ok()?;
    let strategy = match l.strategy.as_str() {
        "fast" => Strategy::Fast,
        "strict" => Strategy::Strict,
        _ => return None,
    };
    if !l.record.is_valid() {
        return None;
    }
    Some((key(&l.record.family, &l.record.degrees, strategy), l.record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use symreg::regseq::{is_regular, DegreeSet, Family};

    fn record(degrees: &[u64], strategy: Strategy) -> ResultRecord {
        let s = DegreeSet::from_degrees(Family::Power, degrees.to_vec()).unwrap();
        ResultRecord::new(&s, &is_regular(&s, strategy, 3, 0), 0)
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let r = record(&[1, 2, 3], Strategy::Fast);
        {
            let mut c = Cache::open(&path).unwrap();
            assert!(c.get("p", &[1, 2, 3], Strategy::Fast).is_none());
            c.put(&r, Strategy::Fast).unwrap();
            assert_eq!(c.get("p", &[1, 2, 3], Strategy::Fast), Some(&r));
        }
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.get("p", &[1, 2, 3], Strategy::Fast), Some(&r));
        assert!(c.get("p", &[1, 2, 3], Strategy::Strict).is_none());
        assert!(c.get("h", &[1, 2, 3], Strategy::Fast).is_none());
    }

    #[test]
    fn strict_supersedes_fast() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut fast = record(&[2, 3, 4], Strategy::Fast);
        fast.method = "marker".into();
        let strict = record(&[2, 3, 4], Strategy::Strict);
        let mut c = Cache::open(&path).unwrap();
        c.put(&fast, Strategy::Fast).unwrap();
        c.put(&strict, Strategy::Strict).unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.get("p", &[2, 3, 4], Strategy::Fast), Some(&strict));
        assert_eq!(c.get("p", &[2, 3, 4], Strategy::Strict), Some(&strict));
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let r = record(&[1, 2], Strategy::Fast);
        let good = serde_json::to_string(&Line { strategy: "fast".into(), record: r.clone() }).unwrap();
        let mut bad_status = r.clone();
        bad_status.status = "maybe".into();
        let bad = serde_json::to_string(&Line { strategy: "fast".into(), record: bad_status }).unwrap();
        std::fs::write(&path, format!("{{not json\n{good}\n{}\n{bad}\n\n", &good[..10])).unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.skipped(), 3);
        assert_eq!(c.get("p", &[1, 2], Strategy::Fast), Some(&r));
    }

    #[test]
    fn append_after_partial_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(&path, "{\"strategy\":\"fa").unwrap();
        let r = record(&[1, 2], Strategy::Fast);
        Cache::open(&path).unwrap().put(&r, Strategy::Fast).unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.get("p", &[1, 2], Strategy::Fast), Some(&r));
        assert_eq!(c.skipped(), 1);
    }

    #[test]
    fn disabled_cache_still_indexes() {
        let mut c = Cache::disabled();
        let r = record(&[1, 2], Strategy::Fast);
        c.put(&r, Strategy::Fast).unwrap();
        assert_eq!(c.get("p", &[1, 2], Strategy::Fast), Some(&r));
        assert!(c.path().is_none());
    }
}
