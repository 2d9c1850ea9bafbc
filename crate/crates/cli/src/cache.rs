//! Single-file-per-operation JSON result cache.
//!
//! Layout: `<dir>/<operation>.json` holding a schema version and a map from
//! canonical parameter strings to stored results. A version mismatch
//! invalidates the whole file. Cached values feed the exact same rendering
//! path as fresh computations, so output is byte-identical either way.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    entries: BTreeMap<String, serde_json::Value>,
}

impl Default for CacheFile {
    fn default() -> Self {
        CacheFile { schema_version: SCHEMA_VERSION, entries: BTreeMap::new() }
    }
}

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    /// Flag beats the `QSCHMIDT_CACHE_DIR` environment variable; with
    /// neither set the cache is disabled and every call recomputes.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag.or_else(|| std::env::var_os("QSCHMIDT_CACHE_DIR").map(PathBuf::from));
        ResultCache { dir }
    }

    fn file_for(&self, operation: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{operation}.json")))
    }

    fn load(&self, operation: &str) -> CacheFile {
        let Some(path) = self.file_for(operation) else {
            return CacheFile::default();
        };
        let Ok(bytes) = std::fs::read(&path) else {
            return CacheFile::default();
        };
        match serde_json::from_slice::<CacheFile>(&bytes) {
            Ok(file) if file.schema_version == SCHEMA_VERSION => file,
            // Unreadable or stale-schema contents are discarded, not errors.
            _ => CacheFile::default(),
        }
    }

    pub fn lookup<T: DeserializeOwned>(&self, operation: &str, key: &str) -> Option<T> {
        let file = self.load(operation);
        let value = file.entries.get(key)?;
        serde_json::from_value(value.clone()).ok()
    }

    pub fn store<T: Serialize>(
        &self,
        operation: &str,
        key: &str,
        value: &T,
    ) -> Result<(), CliError> {
        let Some(path) = self.file_for(operation) else {
            return Ok(());
        };
        let mut file = self.load(operation);
        let encoded = serde_json::to_value(value)
            .map_err(|e| CliError::Io(format!("encoding cache entry {key}"), e.into()))?;
        file.entries.insert(key.to_owned(), encoded);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("creating cache dir {}", parent.display()), e))?;
        }
        let body = serde_json::to_string_pretty(&file)
            .map_err(|e| CliError::Io("encoding cache file".into(), e.into()))?;
        std::fs::write(&path, body)
            .map_err(|e| CliError::Io(format!("writing cache file {}", path.display()), e))
    }
}
