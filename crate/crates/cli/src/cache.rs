//! Scan results cache: a JSON map from run key to output row, rewritten
//! atomically (temp file in the same directory, then rename).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const CODE_VERSION: &str = concat!("markoff-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    entries: BTreeMap<String, Value>,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    file: CacheFile,
}

impl Cache {
    pub fn open(path: &Path) -> Result<Cache, CliError> {
        let err = |msg: String| CliError::Cache {
            path: path.display().to_string(),
            msg,
        };
        let file = match std::fs::read_to_string(path) {
            Ok(text) if text.trim().is_empty() => CacheFile::default(),
            Ok(text) => serde_json::from_str(&text).map_err(|e| err(format!("unreadable: {e}")))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile::default(),
            Err(e) => return Err(err(e.to_string())),
        };
        Ok(Cache {
            path: path.to_path_buf(),
            file,
        })
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.file.entries.get(key)
    }

    pub fn insert(&mut self, key: String, row: Value) {
        self.file.entries.insert(key, row);
    }

    pub fn save(&self) -> Result<(), CliError> {
        let err = |msg: String| CliError::Cache {
            path: self.path.display().to_string(),
            msg,
        };
        let dir = match self.path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| err(e.to_string()))?;
        serde_json::to_writer_pretty(&mut tmp, &self.file)?;
        tmp.write_all(b"\n")?;
        tmp.persist(&self.path).map_err(|e| err(e.to_string()))?;
        Ok(())
    }
}

/// Everything that can change a scan row.
pub fn key(surface: &str, params: &str, gens: &str, bound: u64, cap_height: u64, cap_count: usize) -> String {
    format!("{surface}|k={params}|gens={gens}|box={bound}|caps={cap_height},{cap_count}|{CODE_VERSION}")
}
