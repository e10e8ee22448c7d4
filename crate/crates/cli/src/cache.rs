//! On-disk JSON cache of counterexample searches, keyed by BGS index and
//! the encoding versions.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use bgslab::bgs::{counterexample, BgsPair};
use bgslab::{CounterexampleResult, Natural, CODEC_VERSION, MACHINE_ENCODING_VERSION};
use serde::{Deserialize, Serialize};

const CACHE_FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Versions {
    pub codec: String,
    pub machine: String,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            codec: CODEC_VERSION.into(),
            machine: MACHINE_ENCODING_VERSION.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    codec_version: String,
    machine_encoding_version: String,
    result: CounterexampleResult,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    entries: BTreeMap<String, Entry>,
}

pub struct Cache {
    path: PathBuf,
    versions: Versions,
    entries: BTreeMap<String, Entry>,
    dirty: bool,
    pub hits: u64,
    pub misses: u64,
    /// Problems met while loading; the cache starts empty after any of them.
    pub warnings: Vec<String>,
}

impl Cache {
    pub fn open(path: &Path) -> Self {
        Self::open_with(path, Versions::current())
    }

    pub fn open_with(path: &Path, versions: Versions) -> Self {
        let mut cache = Cache {
            path: path.to_path_buf(),
            versions,
            entries: BTreeMap::new(),
            dirty: false,
            hits: 0,
            misses: 0,
            warnings: Vec::new(),
        };
        match std::fs::read_to_string(path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => cache.warn(format!("cannot read cache {}: {e}", path.display())),
            Ok(text) if text.trim().is_empty() => {}
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) if file.format == CACHE_FORMAT => cache.entries = file.entries,
                Ok(file) => cache.warn(format!(
                    "cache {} has format {}, expected {CACHE_FORMAT}; ignoring it",
                    path.display(),
                    file.format
                )),
                Err(e) => cache.warn(format!(
                    "cache {} is corrupt ({e}); recomputing",
                    path.display()
                )),
            },
        }
        cache
    }

    fn warn(&mut self, msg: String) {
        self.warnings.push(msg);
    }

    fn current(&self, entry: &Entry) -> bool {
        entry.codec_version == self.versions.codec
            && entry.machine_encoding_version == self.versions.machine
    }

    pub fn lookup(&self, n: &Natural, budget: u64) -> Option<CounterexampleResult> {
        self.entries
            .get(&n.to_string())
            .filter(|e| self.current(e))
            .and_then(|e| e.result.rebudget(budget))
    }

    /// Keeps whichever of the stored and new results covers more of the
    /// search.
    pub fn store(&mut self, n: &Natural, result: &CounterexampleResult) {
        let key = n.to_string();
        if let Some(old) = self.entries.get(&key).filter(|e| self.current(e)) {
            if old.result.is_found() || (old.result.scanned >= result.scanned && !result.is_found())
            {
                return;
            }
        }
        self.entries.insert(
            key,
            Entry {
                codec_version: self.versions.codec.clone(),
                machine_encoding_version: self.versions.machine.clone(),
                result: result.clone(),
            },
        );
        self.dirty = true;
    }

    pub fn counterexample(&mut self, pair: &BgsPair, budget: u64) -> CounterexampleResult {
        if let Some(hit) = self.lookup(&pair.index.n, budget) {
            self.hits += 1;
            return hit;
        }
        self.misses += 1;
        let result = counterexample(pair, budget);
        self.store(&pair.index.n, &result);
        result
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn save(&mut self) -> std::io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let dir = match self.path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let file = CacheFile {
            format: CACHE_FORMAT,
            entries: self.entries.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer_pretty(&mut tmp, &file)?;
        tmp.write_all(b"\n")?;
        tmp.persist(&self.path).map_err(|e| e.error)?;
        self.dirty = false;
        Ok(())
    }
}
