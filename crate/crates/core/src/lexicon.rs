//! NRC-style word–emotion lexicon parsing, validation, and lookup.
//!
//! A lexicon maps lowercase words to `(emotion, intensity)` associations.
//! Binary association files encode membership with intensities in `{0, 1}`;
//! graded files carry real intensities anywhere in `[0, 1]`. Both parse into
//! the same [`Lexicon`] representation, so a threshold comparison works
//! uniformly: against a binary lexicon any threshold in `(0, 1]` reduces to
//! a membership test.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// The stock eight-emotion vocabulary, in canonical (ascending) label order.
pub const DEFAULT_EMOTION_LABELS: [&str; 8] = [
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "trust",
];

/// A lowercase emotion label.
///
/// Ordering is lexicographic on the label; that fixes the canonical order of
/// marker emission and of table rows everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmotionId(String);

impl EmotionId {
    /// Builds a label, lowercasing the input.
    ///
    /// Labels must be non-empty and free of whitespace.
    pub fn new(label: &str) -> Result<Self, EmotionLabelError> {
        if label.is_empty() {
            return Err(EmotionLabelError::Empty);
        }
        if label.chars().any(char::is_whitespace) {
            return Err(EmotionLabelError::Whitespace(label.to_string()));
        }
        Ok(Self(label.to_lowercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EmotionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for EmotionId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmotionLabelError {
    #[error("emotion label is empty")]
    Empty,
    #[error("emotion label `{0}` contains whitespace")]
    Whitespace(String),
}

/// An ordered set of unique emotion labels.
///
/// The vocabulary bounds what a lexicon may reference; an analysis run uses
/// a non-empty subset of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionVocabulary {
    labels: Vec<EmotionId>,
}

impl EmotionVocabulary {
    /// A non-empty list of unique labels, order preserved.
    pub fn new(labels: Vec<EmotionId>) -> Result<Self, VocabularyError> {
        if labels.is_empty() {
            return Err(VocabularyError::Empty);
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.clone()) {
                return Err(VocabularyError::Duplicate(label.as_str().to_string()));
            }
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[EmotionId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, emotion: &EmotionId) -> bool {
        self.labels.iter().any(|l| l == emotion)
    }

    /// Validates an ordered selection of labels against the vocabulary.
    ///
    /// Order and multiplicity of `labels` are preserved; duplicates and
    /// labels outside the vocabulary are rejected.
    pub fn subset(&self, labels: &[EmotionId]) -> Result<Vec<EmotionId>, VocabularyError> {
        if labels.is_empty() {
            return Err(VocabularyError::Empty);
        }
        let mut seen = BTreeSet::new();
        for label in labels {
            if !self.contains(label) {
                return Err(VocabularyError::Unknown(label.as_str().to_string()));
            }
            if !seen.insert(label.clone()) {
                return Err(VocabularyError::Duplicate(label.as_str().to_string()));
            }
        }
        Ok(labels.to_vec())
    }
}

impl Default for EmotionVocabulary {
    fn default() -> Self {
        let labels = DEFAULT_EMOTION_LABELS
            .iter()
            .map(|l| EmotionId::new(l).expect("default labels are valid"))
            .collect();
        Self { labels }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabularyError {
    #[error("emotion vocabulary is empty")]
    Empty,
    #[error("duplicate emotion label `{0}`")]
    Duplicate(String),
    #[error("emotion label `{0}` is not in the configured vocabulary")]
    Unknown(String),
}

/// One word–emotion association with its intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub word: String,
    pub emotion: EmotionId,
    pub intensity: f64,
}

impl LexiconEntry {
    /// Lowercases `word`; rejects empty or multi-word strings and
    /// intensities outside `[0, 1]`.
    pub fn new(word: &str, emotion: EmotionId, intensity: f64) -> Result<Self, EntryError> {
        if word.is_empty() {
            return Err(EntryError::EmptyWord);
        }
        if word.chars().any(char::is_whitespace) {
            return Err(EntryError::MultiWord(word.to_string()));
        }
        if !(0.0..=1.0).contains(&intensity) {
            return Err(EntryError::IntensityOutOfRange(intensity));
        }
        Ok(Self {
            word: word.to_lowercase(),
            emotion,
            intensity,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntryError {
    #[error("word is empty")]
    EmptyWord,
    #[error("multi-word entry `{0}` (single words only)")]
    MultiWord(String),
    #[error("intensity {0} is outside [0, 1]")]
    IntensityOutOfRange(f64),
}

/// How the source lexicon encodes associations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    /// Every intensity is exactly 0 or 1.
    BinaryAssociation,
    /// Graded intensities in `[0, 1]`.
    RealIntensity,
}

impl SourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::BinaryAssociation => "binary-association",
            SourceKind::RealIntensity => "real-intensity",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An immutable word → `(emotion, intensity)` index.
///
/// At most one association per `(word, emotion)` pair; associations of a word
/// are stored sorted ascending by emotion label, so lookup order is canonical
/// regardless of input line order. Immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<(EmotionId, f64)>>,
    source_kind: SourceKind,
}

impl Lexicon {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
            source_kind: SourceKind::BinaryAssociation,
        }
    }

    /// Builds a lexicon from validated entries.
    pub fn from_entries(
        entries: impl IntoIterator<Item = LexiconEntry>,
    ) -> Result<Self, DuplicateEntryError> {
        let mut map: BTreeMap<String, Vec<(EmotionId, f64)>> = BTreeMap::new();
        for entry in entries {
            let associations = map.entry(entry.word.clone()).or_default();
            if associations.iter().any(|(e, _)| *e == entry.emotion) {
                return Err(DuplicateEntryError {
                    word: entry.word,
                    emotion: entry.emotion,
                });
            }
            associations.push((entry.emotion, entry.intensity));
        }
        Ok(Self::finalize(map))
    }

    fn finalize(mut entries: BTreeMap<String, Vec<(EmotionId, f64)>>) -> Self {
        for associations in entries.values_mut() {
            associations.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let binary = entries
            .values()
            .flatten()
            .all(|(_, i)| *i == 0.0 || *i == 1.0);
        Self {
            entries,
            source_kind: if binary {
                SourceKind::BinaryAssociation
            } else {
                SourceKind::RealIntensity
            },
        }
    }

    /// All associations of `word`, ascending by emotion label; empty when
    /// the word is absent. `word` is expected to be lowercase already.
    pub fn lookup(&self, word: &str) -> &[(EmotionId, f64)] {
        self.entries.get(word).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    /// Number of distinct words.
    pub fn word_count(&self) -> usize {
        self.entries.len()
    }

    /// Number of `(word, emotion)` associations.
    pub fn entry_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_kind(&self) -> SourceKind {
        self.source_kind
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Canonical tab-separated serialization: words ascending, emotions
    /// ascending within a word. Reparsing the output reproduces the lexicon.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (word, associations) in &self.entries {
            for (emotion, intensity) in associations {
                out.push_str(word);
                out.push('\t');
                out.push_str(emotion.as_str());
                out.push('\t');
                out.push_str(&alloc::format!("{intensity}"));
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("duplicate entry for (`{word}`, {emotion})")]
pub struct DuplicateEntryError {
    pub word: String,
    pub emotion: EmotionId,
}

/// Options for [`parse_lexicon`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Skip the first line of the input.
    pub has_header: bool,
}

/// A parsed lexicon plus counters for skipped out-of-vocabulary lines.
///
/// NRC association files carry sentiment rows (`positive`, `negative`)
/// alongside the emotion rows; those are outside the emotion vocabulary and
/// are counted here rather than treated as errors, so the stock file can be
/// fed unmodified.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedLexicon {
    pub lexicon: Lexicon,
    /// Skipped line counts keyed by the out-of-vocabulary label.
    pub skipped_out_of_vocabulary: BTreeMap<String, u64>,
}

impl ParsedLexicon {
    pub fn skipped_total(&self) -> u64 {
        self.skipped_out_of_vocabulary.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct LexiconParseError {
    /// 1-based input line number (a header, when present, is line 1).
    pub line: usize,
    pub kind: LexiconParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexiconParseErrorKind {
    #[error("expected 3 tab-separated fields, found {0}")]
    FieldCount(usize),
    #[error("{0}")]
    Entry(EntryError),
    #[error("{0}")]
    Emotion(EmotionLabelError),
    #[error("intensity `{0}` is not a number")]
    Value(String),
    #[error("duplicate entry for (`{word}`, {emotion})")]
    Duplicate { word: String, emotion: EmotionId },
}

/// Parses tab-separated `word<TAB>emotion<TAB>intensity` lines.
///
/// Lines whose emotion is outside `vocabulary` are counted and skipped.
/// Zero-intensity entries are retained: they exist in the lexicon but never
/// pass a positive threshold. Words and emotion labels are lowercased.
pub fn parse_lexicon(
    input: &str,
    vocabulary: &EmotionVocabulary,
    options: ParseOptions,
) -> Result<ParsedLexicon, LexiconParseError> {
    let mut entries: BTreeMap<String, Vec<(EmotionId, f64)>> = BTreeMap::new();
    let mut skipped: BTreeMap<String, u64> = BTreeMap::new();

    for (index, line) in input.lines().enumerate() {
        let line_no = index + 1;
        if options.has_header && line_no == 1 {
            continue;
        }
        let err = |kind| LexiconParseError { line: line_no, kind };

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(err(LexiconParseErrorKind::FieldCount(fields.len())));
        }

        let emotion = EmotionId::new(fields[1]).map_err(|e| err(LexiconParseErrorKind::Emotion(e)))?;
        let intensity: f64 = fields[2]
            .parse()
            .map_err(|_| err(LexiconParseErrorKind::Value(fields[2].to_string())))?;
        let entry = LexiconEntry::new(fields[0], emotion, intensity)
            .map_err(|e| err(LexiconParseErrorKind::Entry(e)))?;

        if !vocabulary.contains(&entry.emotion) {
            *skipped.entry(entry.emotion.as_str().to_string()).or_insert(0) += 1;
            continue;
        }

        let associations = entries.entry(entry.word.clone()).or_default();
        if associations.iter().any(|(e, _)| *e == entry.emotion) {
            return Err(err(LexiconParseErrorKind::Duplicate {
                word: entry.word,
                emotion: entry.emotion,
            }));
        }
        associations.push((entry.emotion, entry.intensity));
    }

    Ok(ParsedLexicon {
        lexicon: Lexicon::finalize(entries),
        skipped_out_of_vocabulary: skipped,
    })
}
