use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use crate::record::OutputRecord;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    entries: BTreeMap<String, OutputRecord>,
}

/// Results keyed by command and parameters, persisted as one JSON file.
///
/// A file written by a different version is ignored and overwritten.
pub struct ResultCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, OutputRecord>>,
    dirty: Mutex<bool>,
}

impl ResultCache {
    pub fn open(path: &Path) -> anyhow::Result<Self> {
        let entries = match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) if file.version == VERSION => file.entries,
                _ => BTreeMap::new(),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e).with_context(|| format!("reading cache {}", path.display())),
        };
        Ok(Self {
            path: path.to_owned(),
            entries: Mutex::new(entries),
            dirty: Mutex::new(false),
        })
    }

    pub fn get(&self, key: &str) -> Option<OutputRecord> {
        self.entries.lock().unwrap().get(key).cloned()
    }

    pub fn put(&self, key: String, record: OutputRecord) {
        self.entries.lock().unwrap().insert(key, record);
        *self.dirty.lock().unwrap() = true;
    }

    /// Writes atomically via a sibling temp file.
    pub fn save(&self) -> anyhow::Result<()> {
        if !*self.dirty.lock().unwrap() {
            return Ok(());
        }
        let file = CacheFile {
            version: VERSION.to_owned(),
            entries: self.entries.lock().unwrap().clone(),
        };
        let tmp = self.path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&file)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &self.path).with_context(|| format!("writing cache {}", self.path.display()))?;
        Ok(())
    }
}
