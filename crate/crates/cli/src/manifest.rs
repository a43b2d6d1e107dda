//! Declarative run manifests.
//!
//! A manifest is a TOML file describing one reproducible run: lexicon,
//! stopwords, corpora with domain tags, thresholds, and report settings.
//! Command-line flags override manifest values. Relative paths are resolved
//! against the manifest's directory.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub lexicon: Option<PathBuf>,
    #[serde(default)]
    pub lexicon_has_header: bool,
    pub stopwords: Option<PathBuf>,
    pub tau: Option<f64>,
    pub mu: Option<f64>,
    pub vocabulary: Option<Vec<String>>,
    pub emotions: Option<Vec<String>>,
    #[serde(default)]
    pub drop_numeric: bool,
    pub threads: Option<usize>,
    #[serde(default)]
    pub report: ReportSettings,
    #[serde(default, rename = "corpus")]
    pub corpora: Vec<CorpusEntry>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ReportSettings {
    pub format: Option<String>,
    pub decimals: Option<u32>,
    #[serde(default)]
    pub ascii: bool,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub emit_intermediate: bool,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub path: PathBuf,
    pub domain: Option<String>,
    pub format: Option<String>,
    pub id_field: Option<String>,
    pub text_field: Option<String>,
    pub label_field: Option<String>,
    pub domain_field: Option<String>,
    pub label_map: Option<std::collections::BTreeMap<String, String>>,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest `{path}`: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
}

fn resolve(base: &Path, path: PathBuf) -> PathBuf {
    if path.is_absolute() {
        path
    } else {
        base.join(path)
    }
}

/// Loads and parses a manifest, resolving relative paths against its
/// directory.
pub fn load_manifest(path: &Path) -> Result<RunManifest, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut manifest: RunManifest =
        toml::from_str(&text).map_err(|source| ManifestError::Parse {
            path: path.to_path_buf(),
            source,
        })?;

    let base = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
    manifest.lexicon = manifest.lexicon.map(|p| resolve(&base, p));
    manifest.stopwords = manifest.stopwords.map(|p| resolve(&base, p));
    manifest.report.out = manifest.report.out.map(|p| resolve(&base, p));
    for entry in &mut manifest.corpora {
        entry.path = resolve(&base, std::mem::take(&mut entry.path));
    }
    Ok(manifest)
}
