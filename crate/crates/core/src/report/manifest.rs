//! Run manifests: every output directory gets exactly one `manifest.json`
//! recording the command, fully resolved config, seeds, artifact paths and
//! content hashes, and timestamps. Artifacts themselves never contain
//! timestamps, so re-running a manifest reproduces them byte-identically.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::hash::sha256_file;
use crate::error::Result;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactRecord {
    /// Path relative to the manifest's directory.
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Fully resolved configuration, defaults included.
    pub config: Value,
    pub seeds: Value,
    pub artifacts: Vec<ArtifactRecord>,
    /// Unix timestamp (seconds). Excluded from reproducibility comparisons.
    pub created_unix: u64,
    pub tool: String,
}

impl RunManifest {
    pub fn new(command: &str, config: Value, seeds: Value) -> Self {
        RunManifest {
            command: command.to_string(),
            config,
            seeds,
            artifacts: Vec::new(),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            tool: format!("radlab {}", env!("CARGO_PKG_VERSION")),
        }
    }

    /// Hash `path` (relative to `dir`) and record it.
    pub fn record(&mut self, dir: &Path, rel: &str) -> Result<()> {
        let sha256 = sha256_file(&dir.join(rel))?;
        self.artifacts.push(ArtifactRecord {
            path: rel.to_string(),
            sha256,
        });
        Ok(())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(
            dir.join("manifest.json"),
        )?)?)
    }

    /// Artifact hashes keyed by path, for reproducibility comparisons.
    pub fn artifact_hashes(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .artifacts
            .iter()
            .map(|a| (a.path.clone(), a.sha256.clone()))
            .collect();
        v.sort();
        v
    }
}
