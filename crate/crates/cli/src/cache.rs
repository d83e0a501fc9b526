//! On-disk cache of computed artifacts.
//!
//! Each entry is a JSON file holding the schema version, descriptor, kind,
//! payload and a SHA-256 checksum of the payload. Entries that fail any check
//! are deleted and recomputed. Writes go to a temporary file in the same
//! directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use dworkbench_core::report::SCHEMA_VERSION;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Marks,
    StructureConstants,
    Decomp,
    Cartan,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Marks => "marks",
            Kind::StructureConstants => "structure-constants",
            Kind::Decomp => "decomp",
            Kind::Cartan => "cartan",
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub descriptor: String,
    pub kind: String,
    pub payload: serde_json::Value,
    pub checksum: String,
}

fn checksum(payload: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("json values serialize");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File for an artifact; `variant` distinguishes e.g. prime lists.
    pub fn path(&self, descriptor: &str, kind: Kind, variant: &str) -> PathBuf {
        let clean: String = descriptor
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let mut name = format!("{}-{clean}", kind.as_str());
        if !variant.is_empty() {
            name.push('-');
            name.push_str(variant);
        }
        name.push_str(".json");
        self.dir.join(name)
    }

    /// The cached payload, or `None` if absent or invalid (invalid entries
    /// are removed).
    pub fn load<T: DeserializeOwned>(&self, descriptor: &str, kind: Kind, variant: &str) -> Option<T> {
        let path = self.path(descriptor, kind, variant);
        let bytes = fs::read(&path).ok()?;
        let valid = serde_json::from_slice::<CacheEntry>(&bytes)
            .ok()
            .filter(|e| {
                e.schema_version == SCHEMA_VERSION
                    && e.descriptor == descriptor
                    && e.kind == kind.as_str()
                    && e.checksum == checksum(&e.payload)
            })
            .and_then(|e| serde_json::from_value(e.payload).ok());
        if valid.is_none() {
            let _ = fs::remove_file(&path);
        }
        valid
    }

    pub fn store<T: Serialize>(&self, descriptor: &str, kind: Kind, variant: &str, value: &T) -> Result<()> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let payload = serde_json::to_value(value)?;
        let entry = CacheEntry {
            schema_version: SCHEMA_VERSION,
            descriptor: descriptor.to_string(),
            kind: kind.as_str().to_string(),
            checksum: checksum(&payload),
            payload,
        };
        let path = self.path(descriptor, kind, variant);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.store("A2", Kind::Marks, "", &vec![1u32, 2, 3]).unwrap();
        assert_eq!(cache.load::<Vec<u32>>("A2", Kind::Marks, ""), Some(vec![1, 2, 3]));
        assert_eq!(cache.load::<Vec<u32>>("A2", Kind::Decomp, ""), None);

        let path = cache.path("A2", Kind::Marks, "");
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load::<Vec<u32>>("A2", Kind::Marks, ""), None);
        assert!(!path.exists());
    }

    #[test]
    fn names_are_filesystem_safe() {
        let cache = Cache::new("/c");
        let p = cache.path("I2(5)", Kind::Decomp, "p2-5");
        assert_eq!(p, PathBuf::from("/c/decomp-I2_5_-p2-5.json"));
    }
}
