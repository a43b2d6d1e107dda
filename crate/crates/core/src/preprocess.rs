//! Deterministic text normalization and tokenization.
//!
//! The preparation steps are exactly: URL stripping, Unicode lowercasing,
//! whitespace collapsing, splitting into letter/digit/apostrophe runs, and
//! stopword removal. No stemming and no lemmatization anywhere — surface
//! forms must survive untouched so they can be matched against lexicon
//! words verbatim.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::corpus::Publication;

/// A set of lowercase tokens to drop after tokenization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl StopwordList {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses one token per line; blank lines and `#`-prefixed comment lines
    /// are ignored. Entries are trimmed and lowercased.
    pub fn parse(input: &str) -> Result<Self, StopwordError> {
        let mut words = BTreeSet::new();
        for (index, line) in input.lines().enumerate() {
            let entry = line.trim();
            if entry.is_empty() || entry.starts_with('#') {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(StopwordError::MultiWord {
                    line: index + 1,
                    word: entry.to_string(),
                });
            }
            words.insert(entry.to_lowercase());
        }
        Ok(Self { words })
    }

    /// Builds a list from in-memory tokens; empty items are skipped.
    pub fn from_words<I, S>(words: I) -> Result<Self, StopwordError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for (index, word) in words.into_iter().enumerate() {
            let entry = word.as_ref().trim();
            if entry.is_empty() {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(StopwordError::MultiWord {
                    line: index + 1,
                    word: entry.to_string(),
                });
            }
            set.insert(entry.to_lowercase());
        }
        Ok(Self { words: set })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StopwordError {
    #[error("line {line}: stopword `{word}` contains whitespace")]
    MultiWord { line: usize, word: String },
}

/// The preprocessed word sequence of one publication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    pub publication_id: String,
    pub words: Vec<String>,
}

fn url_scheme_at(text: &str) -> bool {
    const SCHEMES: [&str; 3] = ["https://", "http://", "www."];
    let bytes = text.as_bytes();
    SCHEMES.iter().any(|scheme| {
        bytes.len() >= scheme.len() && bytes[..scheme.len()].eq_ignore_ascii_case(scheme.as_bytes())
    })
}

/// Replaces every substring starting `http://`, `https://`, or `www.`
/// (scheme matched case-insensitively, at any position) and running to the
/// next whitespace or end of input with a single space.
pub fn strip_urls(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while !rest.is_empty() {
        if url_scheme_at(rest) {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(' ');
            rest = &rest[end..];
        } else {
            let mut chars = rest.chars();
            out.push(chars.next().expect("rest is non-empty"));
            rest = chars.as_str();
        }
    }
    out
}

/// URL stripping, Unicode lowercasing, whitespace collapsing, and trimming.
/// Idempotent.
pub fn normalize(text: &str) -> String {
    let stripped = strip_urls(text);
    let lowered = stripped.to_lowercase();
    let mut out = String::with_capacity(lowered.len());
    for (i, chunk) in lowered.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(chunk);
    }
    out
}

fn is_token_char(c: char) -> bool {
    c.is_alphabetic() || c.is_numeric() || c == '\''
}

/// Splits normalized text into maximal runs of Unicode letters, digits, and
/// apostrophes. Everything else — including `#` and `@` — separates, so
/// hashtags and mentions yield their bare word.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !is_token_char(c))
        .filter(|fragment| !fragment.is_empty())
        .map(String::from)
        .collect()
}

/// Drops stopword tokens, preserving the relative order of the rest.
pub fn remove_stopwords(words: Vec<String>, stops: &StopwordList) -> Vec<String> {
    words.into_iter().filter(|w| !stops.contains(w)).collect()
}

/// normalize → tokenize → remove_stopwords with default options.
pub fn preprocess(publication: &Publication, stops: &StopwordList) -> TokenizedDocument {
    Preprocessor::new(stops.clone()).preprocess(publication)
}

/// Reusable preprocessing configuration.
#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    stops: StopwordList,
    drop_numeric: bool,
}

impl Preprocessor {
    pub fn new(stops: StopwordList) -> Self {
        Self {
            stops,
            drop_numeric: false,
        }
    }

    /// Additionally drop tokens made entirely of digits. Alphanumeric tokens
    /// like `covid19` are kept either way.
    pub fn drop_numeric(mut self, yes: bool) -> Self {
        self.drop_numeric = yes;
        self
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stops
    }

    /// The full token pipeline on raw text.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        let words = remove_stopwords(tokenize(&normalize(text)), &self.stops);
        if self.drop_numeric {
            words
                .into_iter()
                .filter(|w| !w.chars().all(char::is_numeric))
                .collect()
        } else {
            words
        }
    }

    pub fn preprocess(&self, publication: &Publication) -> TokenizedDocument {
        TokenizedDocument {
            publication_id: publication.id.clone(),
            words: self.tokens(&publication.text),
        }
    }
}
