//! JSON-lines benchmark manifests.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use seasonlen_core::Reference;
use serde::{Deserialize, Serialize};

/// Reference season as stored in a manifest: `null`, a number or a list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReferenceValue {
    One(f64),
    Many(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Series file, relative to the manifest's directory unless absolute.
    pub path: String,
    pub reference: Option<ReferenceValue>,
    pub family: String,
    pub case: String,
}

impl ManifestEntry {
    pub fn reference(&self) -> Reference {
        match &self.reference {
            None => Reference::None,
            Some(ReferenceValue::One(r)) => Reference::Exact(*r),
            Some(ReferenceValue::Many(rs)) => Reference::AnyOf(rs.clone()),
        }
    }

    pub fn resolve(&self, base: &Path) -> PathBuf {
        let p = Path::new(&self.path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base.join(p)
        }
    }
}

impl ReferenceValue {
    pub fn from_reference(r: &Reference) -> Option<Self> {
        match r {
            Reference::None => None,
            Reference::Exact(v) => Some(ReferenceValue::One(*v)),
            Reference::AnyOf(vs) => Some(ReferenceValue::Many(vs.clone())),
        }
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("manifest line {}", i + 1)))
        .collect()
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read manifest {}", path.display()))?;
    parse_manifest(&text)
}

pub fn to_jsonl(entries: &[ManifestEntry]) -> String {
    entries
        .iter()
        .map(|e| serde_json::to_string(e).expect("manifest entries serialize") + "\n")
        .collect()
}
