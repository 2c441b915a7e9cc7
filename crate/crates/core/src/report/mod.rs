//! Run manifests, content hashing, and small CSV helpers shared by the
//! exporters and the CLI.

pub mod hash;
pub mod manifest;

pub use manifest::{ArtifactRecord, RunManifest};
