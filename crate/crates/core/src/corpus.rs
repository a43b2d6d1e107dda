//! Labeled publication corpora: the two publication classes, per-domain
//! collections, and duplicate removal.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// The two publication classes being contrasted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PublicationClass {
    NoFake,
    Fake,
}

impl PublicationClass {
    pub const ALL: [PublicationClass; 2] = [PublicationClass::NoFake, PublicationClass::Fake];

    /// Canonical label string.
    pub fn label(self) -> &'static str {
        match self {
            PublicationClass::NoFake => "nofake",
            PublicationClass::Fake => "fake",
        }
    }

    /// Case-insensitive parse of the canonical labels.
    pub fn parse(label: &str) -> Option<Self> {
        match label.to_lowercase().as_str() {
            "fake" => Some(PublicationClass::Fake),
            "nofake" => Some(PublicationClass::NoFake),
            _ => None,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            PublicationClass::NoFake => PublicationClass::Fake,
            PublicationClass::Fake => PublicationClass::NoFake,
        }
    }
}

impl fmt::Display for PublicationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One labeled text item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub id: String,
    pub text: String,
    pub class: PublicationClass,
    pub domain: String,
}

/// An ordered, single-domain collection of publications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    domain: String,
    publications: Vec<Publication>,
}

impl Corpus {
    /// Validates that every publication carries the corpus domain, a unique
    /// id, and non-empty text.
    pub fn new(
        domain: impl Into<String>,
        publications: Vec<Publication>,
    ) -> Result<Self, CorpusError> {
        let domain = domain.into();
        let mut ids = BTreeSet::new();
        for publication in &publications {
            if publication.domain != domain {
                return Err(CorpusError::DomainMismatch {
                    id: publication.id.clone(),
                    expected: domain,
                    found: publication.domain.clone(),
                });
            }
            if publication.text.is_empty() {
                return Err(CorpusError::EmptyText {
                    id: publication.id.clone(),
                });
            }
            if !ids.insert(publication.id.clone()) {
                return Err(CorpusError::DuplicateId {
                    id: publication.id.clone(),
                });
            }
        }
        Ok(Self {
            domain,
            publications,
        })
    }

    pub fn domain(&self) -> &str {
        &self.domain
    }

    pub fn publications(&self) -> &[Publication] {
        &self.publications
    }

    pub fn len(&self) -> usize {
        self.publications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.publications.is_empty()
    }

    pub fn into_publications(self) -> Vec<Publication> {
        self.publications
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("publication `{id}`: domain `{found}` does not match corpus domain `{expected}`")]
    DomainMismatch {
        id: String,
        expected: String,
        found: String,
    },
    #[error("duplicate publication id `{id}`")]
    DuplicateId { id: String },
    #[error("publication `{id}` has empty text")]
    EmptyText { id: String },
}

/// A deduplicated corpus plus how many publications were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedupResult {
    pub corpus: Corpus,
    pub removed: usize,
}

/// Keeps the first occurrence of each normalized text, preserving order
/// otherwise.
///
/// `normalizer` should be the preprocessing normalization (URL strip +
/// lowercase + whitespace collapse), so that case and spacing variants of the
/// same text count as duplicates.
pub fn dedup_corpus<F>(corpus: Corpus, normalizer: F) -> DedupResult
where
    F: Fn(&str) -> String,
{
    let total = corpus.len();
    let mut seen = BTreeSet::new();
    let publications: Vec<Publication> = corpus
        .publications
        .into_iter()
        .filter(|p| seen.insert(normalizer(&p.text)))
        .collect();
    let removed = total - publications.len();
    DedupResult {
        corpus: Corpus {
            domain: corpus.domain,
            publications,
        },
        removed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::normalize;
    use alloc::string::ToString;
    use alloc::vec;

    fn publication(id: &str, text: &str) -> Publication {
        Publication {
            id: id.to_string(),
            text: text.to_string(),
            class: PublicationClass::Fake,
            domain: "politics".to_string(),
        }
    }

    #[test]
    fn class_labels_round_trip() {
        for class in PublicationClass::ALL {
            assert_eq!(PublicationClass::parse(class.label()), Some(class));
        }
        assert_eq!(PublicationClass::parse("FAKE"), Some(PublicationClass::Fake));
        assert_eq!(PublicationClass::parse("real"), None);
    }

    #[test]
    fn corpus_rejects_domain_mismatch_duplicate_id_and_empty_text() {
        let mut other = publication("2", "b");
        other.domain = "celebrities".to_string();
        assert!(matches!(
            Corpus::new("politics", vec![publication("1", "a"), other]),
            Err(CorpusError::DomainMismatch { .. })
        ));

        assert!(matches!(
            Corpus::new("politics", vec![publication("1", "a"), publication("1", "b")]),
            Err(CorpusError::DuplicateId { .. })
        ));

        assert!(matches!(
            Corpus::new("politics", vec![publication("1", "")]),
            Err(CorpusError::EmptyText { .. })
        ));
    }

    #[test]
    fn dedup_keeps_first_of_case_and_whitespace_variants() {
        let corpus = Corpus::new(
            "politics",
            vec![publication("1", "Hello  X"), publication("2", "hello x")],
        )
        .unwrap();
        let result = dedup_corpus(corpus, normalize);
        assert_eq!(result.removed, 1);
        assert_eq!(result.corpus.len(), 1);
        assert_eq!(result.corpus.publications()[0].id, "1");
    }

    #[test]
    fn dedup_of_all_distinct_corpus_is_identity() {
        let corpus = Corpus::new(
            "politics",
            vec![publication("1", "a"), publication("2", "b")],
        )
        .unwrap();
        let result = dedup_corpus(corpus.clone(), normalize);
        assert_eq!(result.removed, 0);
        assert_eq!(result.corpus, corpus);
    }

    #[test]
    fn dedup_is_idempotent() {
        let corpus = Corpus::new(
            "politics",
            vec![
                publication("1", "a b"),
                publication("2", "A  B"),
                publication("3", "c"),
            ],
        )
        .unwrap();
        let once = dedup_corpus(corpus, normalize);
        let twice = dedup_corpus(once.corpus.clone(), normalize);
        assert_eq!(twice.corpus, once.corpus);
        assert_eq!(twice.removed, 0);
    }
}
