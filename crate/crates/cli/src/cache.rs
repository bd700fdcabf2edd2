//! Content-addressed artifact cache with atomic writes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
#[cfg(test)]
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::render::Artifact;

/// Bumped whenever an artifact's meaning or encoding changes.
pub const ARTIFACT_VERSION: u32 = 1;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    #[cfg(test)]
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable or stale entries count as misses.
    pub fn get(&self, key: &str) -> Option<Artifact> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, a: &Artifact) -> std::io::Result<()> {
        static SEQ: AtomicU64 = AtomicU64::new(0);
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(a).expect("artifacts serialize").as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path(key)).inspect_err(|_e| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

/// Hash of the command name, its canonical parameters and the artifact version.
/// `serde_json::Value` maps are sorted, so key order in `params` does not matter.
pub fn cache_key(command: &str, params: &Value) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(serde_json::to_string(params).expect("params serialize").as_bytes());
    h.update([0]);
    h.update(ARTIFACT_VERSION.to_le_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
