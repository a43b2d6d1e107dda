//! The three analysis layers: emotionalization, quantification, and
//! characterization.
//!
//! Emotionalization appends an emotion marker after every word whose lexicon
//! intensity meets the threshold `tau` (inclusive). Quantification splits the
//! marked corpus by publication class and computes, per emotion `e` and class
//! `i`, the percentage `P(e,i) = E(e,i) * 100 / W(i)` where `E` counts
//! markers and `W` counts word tokens. Characterization takes the variation
//! `V(e) = P(e, nofake) - P(e, fake)` and maps it through the margin `mu` to
//! an up/down/equal symbol.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::corpus::{dedup_corpus, Corpus, PublicationClass};
use crate::lexicon::{EmotionId, Lexicon};
use crate::preprocess::{normalize, Preprocessor, TokenizedDocument};

/// Default emotionalization threshold. Any value in `(0, 1]` is equivalent
/// for binary-association lexicons.
pub const DEFAULT_TAU: f64 = 0.5;

/// Default characterization margin.
pub const DEFAULT_MU: f64 = 0.03;

/// One token of an emotionalized document: an original word or an emotion
/// marker emitted right after the word that triggered it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Word(String),
    Marker(EmotionId),
}

impl Token {
    pub fn is_word(&self) -> bool {
        matches!(self, Token::Word(_))
    }

    pub fn is_marker(&self) -> bool {
        matches!(self, Token::Marker(_))
    }

    pub fn as_word(&self) -> Option<&str> {
        match self {
            Token::Word(w) => Some(w),
            Token::Marker(_) => None,
        }
    }

    pub fn as_marker(&self) -> Option<&EmotionId> {
        match self {
            Token::Word(_) => None,
            Token::Marker(e) => Some(e),
        }
    }
}

/// A publication's token stream after emotionalization.
///
/// The subsequence of `Word` tokens equals the source document exactly;
/// markers follow their trigger word in ascending label order, at most one
/// per `(position, emotion)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionalizedDocument {
    pub publication_id: String,
    pub class: PublicationClass,
    pub tokens: Vec<Token>,
}

impl EmotionalizedDocument {
    /// The original word sequence, markers stripped.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().filter_map(Token::as_word)
    }

    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word()).count()
    }
}

/// Validated pipeline parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    tau: f64,
    mu: f64,
    emotions: Vec<EmotionId>,
}

impl PipelineConfig {
    /// Requires `tau` in `[0, 1]`, `mu > 0`, and a non-empty list of unique
    /// emotions.
    pub fn new(tau: f64, mu: f64, emotions: Vec<EmotionId>) -> Result<Self, ConfigError> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(ConfigError::TauOutOfRange(tau));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(ConfigError::MuNotPositive(mu));
        }
        if emotions.is_empty() {
            return Err(ConfigError::NoEmotions);
        }
        for (index, emotion) in emotions.iter().enumerate() {
            if emotions[..index].contains(emotion) {
                return Err(ConfigError::DuplicateEmotion(emotion.as_str().to_string()));
            }
        }
        Ok(Self { tau, mu, emotions })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn emotions(&self) -> &[EmotionId] {
        &self.emotions
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("tau {0} is outside [0, 1]")]
    TauOutOfRange(f64),
    #[error("mu {0} must be strictly positive")]
    MuNotPositive(f64),
    #[error("emotion list is empty")]
    NoEmotions,
    #[error("duplicate emotion `{0}` in configuration")]
    DuplicateEmotion(String),
}

/// A value per publication class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassPair<T> {
    pub no_fake: T,
    pub fake: T,
}

impl<T> ClassPair<T> {
    pub fn new(no_fake: T, fake: T) -> Self {
        Self { no_fake, fake }
    }

    pub fn get(&self, class: PublicationClass) -> &T {
        match class {
            PublicationClass::NoFake => &self.no_fake,
            PublicationClass::Fake => &self.fake,
        }
    }

    pub fn get_mut(&mut self, class: PublicationClass) -> &mut T {
        match class {
            PublicationClass::NoFake => &mut self.no_fake,
            PublicationClass::Fake => &mut self.fake,
        }
    }
}

/// Raw marker and word tallies, mergeable across workers.
///
/// Merging is associative and commutative (plain integer sums), so any
/// partition of the documents and any merge order yields identical counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusCounts {
    emotion_counts: BTreeMap<EmotionId, ClassPair<u64>>,
    word_counts: ClassPair<u64>,
}

impl CorpusCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tallies one document: all of its markers and its word count.
    pub fn observe(&mut self, document: &EmotionalizedDocument) {
        for token in &document.tokens {
            match token {
                Token::Word(_) => {
                    *self.word_counts.get_mut(document.class) += 1;
                }
                Token::Marker(emotion) => {
                    *self
                        .emotion_counts
                        .entry(emotion.clone())
                        .or_default()
                        .get_mut(document.class) += 1;
                }
            }
        }
    }

    pub fn merge(mut self, other: CorpusCounts) -> CorpusCounts {
        for (emotion, counts) in other.emotion_counts {
            let entry = self.emotion_counts.entry(emotion).or_default();
            entry.no_fake += counts.no_fake;
            entry.fake += counts.fake;
        }
        self.word_counts.no_fake += other.word_counts.no_fake;
        self.word_counts.fake += other.word_counts.fake;
        self
    }

    pub fn from_documents(documents: &[EmotionalizedDocument]) -> Self {
        let mut counts = Self::new();
        for document in documents {
            counts.observe(document);
        }
        counts
    }

    pub fn word_counts(&self) -> ClassPair<u64> {
        self.word_counts
    }

    pub fn emotion_count(&self, emotion: &EmotionId) -> ClassPair<u64> {
        self.emotion_counts.get(emotion).copied().unwrap_or_default()
    }
}

/// Per-emotion, per-class counts and percentages for one domain.
///
/// Tables built by [`quantify`] carry raw counts and percentages satisfying
/// `P(e,i) = E(e,i) * 100 / W(i)` exactly; tables loaded from published
/// percentages carry no counts.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantificationTable {
    domain: String,
    emotions: Vec<EmotionId>,
    percentages: BTreeMap<EmotionId, ClassPair<f64>>,
    counts: Option<TableCounts>,
    degenerate: Vec<PublicationClass>,
}

/// The raw tallies behind a quantified table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCounts {
    pub emotion_counts: BTreeMap<EmotionId, ClassPair<u64>>,
    pub word_counts: ClassPair<u64>,
}

impl QuantificationTable {
    /// Builds a counts-free table from percentage values in `[0, 100]`.
    /// Row order follows `rows`.
    pub fn from_percentages(
        domain: impl Into<String>,
        rows: Vec<(EmotionId, ClassPair<f64>)>,
    ) -> Result<Self, TableError> {
        let mut emotions = Vec::with_capacity(rows.len());
        let mut percentages = BTreeMap::new();
        for (emotion, values) in rows {
            for class in PublicationClass::ALL {
                let value = *values.get(class);
                if !(0.0..=100.0).contains(&value) {
                    return Err(TableError::PercentageOutOfRange {
                        emotion: emotion.as_str().to_string(),
                        value,
                    });
                }
            }
            if percentages.insert(emotion.clone(), values).is_some() {
                return Err(TableError::DuplicateEmotion(emotion.as_str().to_string()));
            }
            emotions.push(emotion);
        }
        Ok(Self {
            domain: domain.into(),
            emotions,
            percentages,
            counts: None,
            degenerate: Vec::new(),
        })
    }

    /// Builds the table for `emotions` (in that order) from raw counts.
    /// Repeated emotions are kept once, at their first position.
    pub fn from_counts(
        domain: impl Into<String>,
        emotions: &[EmotionId],
        counts: CorpusCounts,
    ) -> Self {
        let word_counts = counts.word_counts();
        let degenerate: Vec<PublicationClass> = PublicationClass::ALL
            .into_iter()
            .filter(|class| *word_counts.get(*class) == 0)
            .collect();

        let mut order = Vec::with_capacity(emotions.len());
        let mut percentages = BTreeMap::new();
        let mut emotion_counts = BTreeMap::new();
        for emotion in emotions {
            if percentages.contains_key(emotion) {
                continue;
            }
            let tally = counts.emotion_count(emotion);
            let mut row = ClassPair::default();
            for class in PublicationClass::ALL {
                let words = *word_counts.get(class);
                *row.get_mut(class) = if words > 0 {
                    *tally.get(class) as f64 * 100.0 / words as f64
                } else {
                    0.0
                };
            }
            percentages.insert(emotion.clone(), row);
            emotion_counts.insert(emotion.clone(), tally);
            order.push(emotion.clone());
        }

        Self {
            domain: domain.into(),
            emotions: order,
            percentages,
            counts: Some(TableCounts {
                emotion_counts,
                word_counts,
            }),
            degenerate,
        }
    }

    /// Rebuilds a quantified table from raw tallies, e.g. read back from a
    /// file. Counts must satisfy `E(e,i) <= W(i)`.
    pub fn from_raw_counts(
        domain: impl Into<String>,
        rows: Vec<(EmotionId, ClassPair<u64>)>,
        word_counts: ClassPair<u64>,
    ) -> Result<Self, TableError> {
        let mut counts = CorpusCounts::new();
        counts.word_counts = word_counts;
        let mut order = Vec::with_capacity(rows.len());
        for (emotion, tally) in rows {
            for class in PublicationClass::ALL {
                if *tally.get(class) > *word_counts.get(class) {
                    return Err(TableError::CountExceedsWords {
                        emotion: emotion.as_str().to_string(),
                        count: *tally.get(class),
                        words: *word_counts.get(class),
                    });
                }
            }
            if counts.emotion_counts.insert(emotion.clone(), tally).is_some() {
                return Err(TableError::DuplicateEmotion(emotion.as_str().to_string()));
            }
            order.push(emotion);
        }
        Ok(Self::from_counts(domain, &order, counts))
    }

    pub fn domain(&self) -> &str {
        &self.domain
    }

    /// Row order.
    pub fn emotions(&self) -> &[EmotionId] {
        &self.emotions
    }

    pub fn percentage(&self, emotion: &EmotionId, class: PublicationClass) -> Option<f64> {
        self.percentages.get(emotion).map(|pair| *pair.get(class))
    }

    pub fn percentages(&self, emotion: &EmotionId) -> Option<ClassPair<f64>> {
        self.percentages.get(emotion).copied()
    }

    pub fn counts(&self) -> Option<&TableCounts> {
        self.counts.as_ref()
    }

    /// Classes that contributed zero words; their percentages are defined
    /// as 0.
    pub fn degenerate_classes(&self) -> &[PublicationClass] {
        &self.degenerate
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("percentage {value} for emotion `{emotion}` is outside [0, 100]")]
    PercentageOutOfRange { emotion: String, value: f64 },
    #[error("duplicate emotion `{0}` in table")]
    DuplicateEmotion(String),
    #[error("emotion `{emotion}` counts {count} markers but the class has only {words} words")]
    CountExceedsWords {
        emotion: String,
        count: u64,
        words: u64,
    },
}

/// Direction of an emotion's variation between the classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariationSymbol {
    /// The emotion occurs more in fake publications (`V < -mu`), printed ↑.
    MoreInFake,
    /// The emotion occurs less in fake publications (`V > mu`), printed ↓.
    LessInFake,
    /// Within the margin (`-mu <= V <= mu`), printed =.
    Equal,
}

impl VariationSymbol {
    pub fn glyph(self) -> &'static str {
        match self {
            VariationSymbol::MoreInFake => "\u{2191}",
            VariationSymbol::LessInFake => "\u{2193}",
            VariationSymbol::Equal => "=",
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            VariationSymbol::MoreInFake => "up",
            VariationSymbol::LessInFake => "down",
            VariationSymbol::Equal => "eq",
        }
    }

    /// Accepts either the glyph or the ascii form, case-insensitively.
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().to_lowercase().as_str() {
            "\u{2191}" | "up" => Some(VariationSymbol::MoreInFake),
            "\u{2193}" | "down" => Some(VariationSymbol::LessInFake),
            "=" | "eq" => Some(VariationSymbol::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for VariationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.glyph())
    }
}

/// One characterization result.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterizationRow {
    pub emotion: EmotionId,
    pub variation: f64,
    pub symbol: VariationSymbol,
}

/// The word followed by a marker for every association with intensity
/// `>= tau` (inclusive), markers in ascending label order.
pub fn emotionalize_word(word: &str, lexicon: &Lexicon, tau: f64) -> Vec<Token> {
    debug_assert!((0.0..=1.0).contains(&tau));
    let mut tokens = Vec::with_capacity(1);
    tokens.push(Token::Word(word.to_string()));
    for (emotion, intensity) in lexicon.lookup(word) {
        if *intensity >= tau {
            tokens.push(Token::Marker(emotion.clone()));
        }
    }
    tokens
}

/// Emotionalizes one preprocessed document.
pub fn emotionalize_document(
    document: &TokenizedDocument,
    class: PublicationClass,
    lexicon: &Lexicon,
    tau: f64,
) -> EmotionalizedDocument {
    let mut tokens = Vec::with_capacity(document.words.len());
    for word in &document.words {
        tokens.extend(emotionalize_word(word, lexicon, tau));
    }
    EmotionalizedDocument {
        publication_id: document.publication_id.clone(),
        class,
        tokens,
    }
}

/// Emotionalizes every document, preserving order; the document count is
/// unchanged.
pub fn emotionalize_corpus(
    documents: &[(TokenizedDocument, PublicationClass)],
    lexicon: &Lexicon,
    tau: f64,
) -> Vec<EmotionalizedDocument> {
    documents
        .iter()
        .map(|(document, class)| emotionalize_document(document, *class, lexicon, tau))
        .collect()
}

/// Splits documents by class and computes `E`, `W`, and `P` for `emotions`.
///
/// Markers are excluded from the word-count denominator. A class with zero
/// words is flagged degenerate and its percentages are 0.
pub fn quantify(
    documents: &[EmotionalizedDocument],
    emotions: &[EmotionId],
    domain: &str,
) -> QuantificationTable {
    QuantificationTable::from_counts(domain, emotions, CorpusCounts::from_documents(documents))
}

/// The variation `V(e) = P(e, nofake) - P(e, fake)`, full precision.
/// `None` when the emotion has no row in the table.
pub fn contrast(table: &QuantificationTable, emotion: &EmotionId) -> Option<f64> {
    let pair = table.percentages(emotion)?;
    Some(pair.no_fake - pair.fake)
}

/// Maps a variation to its symbol: `V > mu` → less-in-fake (↓),
/// `V < -mu` → more-in-fake (↑), otherwise (including `V = ±mu`) equal.
pub fn classify(variation: f64, mu: f64) -> Result<VariationSymbol, ConfigError> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(ConfigError::MuNotPositive(mu));
    }
    Ok(if variation > mu {
        VariationSymbol::LessInFake
    } else if variation < -mu {
        VariationSymbol::MoreInFake
    } else {
        VariationSymbol::Equal
    })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("emotion `{0}` has no row in the quantification table")]
    EmotionNotInTable(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// One row per configured emotion, in configured order.
pub fn characterize(
    table: &QuantificationTable,
    config: &PipelineConfig,
) -> Result<Vec<CharacterizationRow>, PipelineError> {
    config
        .emotions()
        .iter()
        .map(|emotion| {
            let variation = contrast(table, emotion)
                .ok_or_else(|| PipelineError::EmotionNotInTable(emotion.as_str().to_string()))?;
            let symbol = classify(variation, config.mu())?;
            Ok(CharacterizationRow {
                emotion: emotion.clone(),
                variation,
                symbol,
            })
        })
        .collect()
}

/// Everything a full pipeline run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    pub quantification: QuantificationTable,
    pub characterization: Vec<CharacterizationRow>,
    pub emotionalized: Vec<EmotionalizedDocument>,
    pub duplicates_removed: usize,
}

/// dedup → preprocess → emotionalize → quantify → characterize.
///
/// Deterministic: repeated runs over the same inputs yield identical output.
pub fn run_pipeline(
    corpus: Corpus,
    lexicon: &Lexicon,
    preprocessor: &Preprocessor,
    config: &PipelineConfig,
) -> Result<PipelineRun, PipelineError> {
    if corpus.is_empty() {
        return Err(PipelineError::EmptyCorpus);
    }
    let domain = corpus.domain().to_string();
    let deduped = dedup_corpus(corpus, normalize);

    let documents: Vec<(TokenizedDocument, PublicationClass)> = deduped
        .corpus
        .publications()
        .iter()
        .map(|p| (preprocessor.preprocess(p), p.class))
        .collect();

    let emotionalized = emotionalize_corpus(&documents, lexicon, config.tau());
    let quantification = quantify(&emotionalized, config.emotions(), &domain);
    let characterization = characterize(&quantification, config)?;

    Ok(PipelineRun {
        quantification,
        characterization,
        emotionalized,
        duplicates_removed: deduped.removed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Publication;
    use crate::lexicon::{parse_lexicon, EmotionVocabulary, ParseOptions};
    use crate::preprocess::StopwordList;
    use alloc::vec;

    fn emotion(label: &str) -> EmotionId {
        EmotionId::new(label).unwrap()
    }

    fn lexicon(tsv: &str) -> Lexicon {
        parse_lexicon(tsv, &EmotionVocabulary::default(), ParseOptions::default())
            .unwrap()
            .lexicon
    }

    fn default_emotions() -> Vec<EmotionId> {
        EmotionVocabulary::default().labels().to_vec()
    }

    fn word(text: &str) -> Token {
        Token::Word(text.to_string())
    }

    fn marker(label: &str) -> Token {
        Token::Marker(emotion(label))
    }

    #[test]
    fn emotionalize_word_inclusive_threshold() {
        let lex = lexicon("grim\tfear\t0.80\n");
        assert_eq!(
            emotionalize_word("grim", &lex, 0.5),
            vec![word("grim"), marker("fear")]
        );
        assert_eq!(emotionalize_word("grim", &lex, 0.9), vec![word("grim")]);
        // Exactly at the threshold the marker is emitted.
        assert_eq!(
            emotionalize_word("grim", &lex, 0.8),
            vec![word("grim"), marker("fear")]
        );
    }

    #[test]
    fn emotionalize_word_boundary_cases() {
        let lex = lexicon("w\tanger\t0.6\nw\tfear\t0.6\nw\tjoy\t0.59\n");
        // Inclusive threshold, ascending label order, below-threshold dropped.
        assert_eq!(
            emotionalize_word("w", &lex, 0.6),
            vec![word("w"), marker("anger"), marker("fear")]
        );
        // tau = 0 lets every association through, including intensity 0.
        let zero = lexicon("z\tfear\t0\n");
        assert_eq!(
            emotionalize_word("z", &zero, 0.0),
            vec![word("z"), marker("fear")]
        );
        assert_eq!(emotionalize_word("z", &zero, 0.1), vec![word("z")]);
        // Unknown word: just the word back.
        assert_eq!(emotionalize_word("q", &lex, 0.0), vec![word("q")]);
    }

    #[test]
    fn emotionalize_corpus_is_empty_on_empty_input() {
        let lex = lexicon("grim\tfear\t1\n");
        assert!(emotionalize_corpus(&[], &lex, 0.5).is_empty());
    }

    #[test]
    fn tau_above_every_intensity_returns_words_only() {
        let lex = lexicon("grim\tfear\t0.80\ntruth\tjoy\t0.90\n");
        let doc = TokenizedDocument {
            publication_id: "1".to_string(),
            words: vec!["grim".to_string(), "truth".to_string()],
        };
        let out = emotionalize_corpus(&[(doc.clone(), PublicationClass::Fake)], &lex, 0.95);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].tokens, vec![word("grim"), word("truth")]);
        // Word preservation holds in both branches.
        let words: Vec<&str> = out[0].words().collect();
        assert_eq!(words, vec!["grim", "truth"]);
    }

    #[test]
    fn quantify_direct_arithmetic() {
        // One fake document [Word, Word, Marker(fear), Word, Word]:
        // E(fear, fake) = 1, W(fake) = 4, P = 25.
        let doc = EmotionalizedDocument {
            publication_id: "1".to_string(),
            class: PublicationClass::Fake,
            tokens: vec![word("a"), word("b"), marker("fear"), word("c"), word("d")],
        };
        let table = quantify(&[doc], &default_emotions(), "politics");
        let counts = table.counts().unwrap();
        assert_eq!(counts.word_counts.fake, 4);
        assert_eq!(
            counts.emotion_counts.get(&emotion("fear")).unwrap().fake,
            1
        );
        assert_eq!(
            table.percentage(&emotion("fear"), PublicationClass::Fake),
            Some(25.0)
        );
        // The no-fake class saw no words: degenerate, percentages 0.
        assert_eq!(table.degenerate_classes(), &[PublicationClass::NoFake]);
        assert_eq!(
            table.percentage(&emotion("fear"), PublicationClass::NoFake),
            Some(0.0)
        );
    }

    #[test]
    fn quantify_without_markers_gives_zero_percentages() {
        let docs = vec![
            EmotionalizedDocument {
                publication_id: "1".to_string(),
                class: PublicationClass::Fake,
                tokens: vec![word("a"), word("b")],
            },
            EmotionalizedDocument {
                publication_id: "2".to_string(),
                class: PublicationClass::NoFake,
                tokens: vec![word("c")],
            },
        ];
        let table = quantify(&docs, &default_emotions(), "politics");
        for e in table.emotions() {
            for class in PublicationClass::ALL {
                assert_eq!(table.percentage(e, class), Some(0.0));
            }
        }
        assert!(table.degenerate_classes().is_empty());
    }

    // Corpus engineered so that anger percentages match the published
    // politics column after 2-decimal rounding: 4/700 and 10/900.
    #[test]
    fn quantify_engineered_politics_corpus() {
        let lex = lexicon("rage\tanger\t1\n");
        let mut documents = Vec::new();
        for doc_index in 0..7 {
            let rage = if doc_index == 0 { 4 } else { 0 };
            let mut words = Vec::new();
            for w in 0..100 {
                if w < rage {
                    words.push("rage".to_string());
                } else {
                    words.push(alloc::format!("nf{doc_index}w{w}"));
                }
            }
            documents.push((
                TokenizedDocument {
                    publication_id: alloc::format!("nf{doc_index}"),
                    words,
                },
                PublicationClass::NoFake,
            ));
        }
        for doc_index in 0..9 {
            let rage = if doc_index == 0 { 10 } else { 0 };
            let mut words = Vec::new();
            for w in 0..100 {
                if w < rage {
                    words.push("rage".to_string());
                } else {
                    words.push(alloc::format!("f{doc_index}w{w}"));
                }
            }
            documents.push((
                TokenizedDocument {
                    publication_id: alloc::format!("f{doc_index}"),
                    words,
                },
                PublicationClass::Fake,
            ));
        }

        let emotionalized = emotionalize_corpus(&documents, &lex, 0.5);
        let table = quantify(&emotionalized, &default_emotions(), "politics");
        let counts = table.counts().unwrap();
        assert_eq!(counts.word_counts, ClassPair::new(700, 900));
        assert_eq!(
            counts.emotion_counts.get(&emotion("anger")).unwrap(),
            &ClassPair::new(4, 10)
        );

        let anger = table.percentages(&emotion("anger")).unwrap();
        assert_eq!(anger.no_fake, 4.0 * 100.0 / 700.0);
        assert_eq!(anger.fake, 10.0 * 100.0 / 900.0);
        // Rounded to two decimals these are 0.57% and 1.11%.
        assert_eq!((anger.no_fake * 100.0).round(), 57.0);
        assert_eq!((anger.fake * 100.0).round(), 111.0);
    }

    #[test]
    fn contrast_examples() {
        let table = QuantificationTable::from_percentages(
            "politics",
            vec![
                (emotion("anger"), ClassPair::new(0.57, 1.11)),
                (emotion("anticipation"), ClassPair::new(0.42, 0.42)),
            ],
        )
        .unwrap();
        let v = contrast(&table, &emotion("anger")).unwrap();
        assert!((v - (0.57 - 1.11)).abs() < 1e-15);
        assert_eq!(contrast(&table, &emotion("anticipation")), Some(0.0));
        assert_eq!(contrast(&table, &emotion("joy")), None);

        // Swapping the class columns negates V.
        let swapped = QuantificationTable::from_percentages(
            "politics",
            vec![(emotion("anger"), ClassPair::new(1.11, 0.57))],
        )
        .unwrap();
        assert_eq!(
            contrast(&swapped, &emotion("anger")).unwrap(),
            -contrast(&table, &emotion("anger")).unwrap()
        );
    }

    #[test]
    fn classify_branches_and_boundaries() {
        assert_eq!(
            classify(-0.54, 0.03).unwrap(),
            VariationSymbol::MoreInFake
        );
        assert_eq!(classify(0.14, 0.03).unwrap(), VariationSymbol::LessInFake);
        assert_eq!(classify(0.0, 0.03).unwrap(), VariationSymbol::Equal);
        assert_eq!(classify(0.0, 100.0).unwrap(), VariationSymbol::Equal);
        // Boundaries map to equal: the middle branch is inclusive.
        assert_eq!(classify(0.03, 0.03).unwrap(), VariationSymbol::Equal);
        assert_eq!(classify(-0.03, 0.03).unwrap(), VariationSymbol::Equal);

        assert!(classify(0.0, 0.0).is_err());
        assert!(classify(0.0, -1.0).is_err());
        assert!(classify(0.0, f64::NAN).is_err());
    }

    fn published_table(domain: &str, rows: &[(&str, f64, f64)]) -> QuantificationTable {
        QuantificationTable::from_percentages(
            domain,
            rows.iter()
                .map(|(label, no_fake, fake)| (emotion(label), ClassPair::new(*no_fake, *fake)))
                .collect(),
        )
        .unwrap()
    }

    const SEVEN: [&str; 7] = [
        "anger",
        "anticipation",
        "disgust",
        "fear",
        "joy",
        "sadness",
        "surprise",
    ];

    fn seven_emotion_config() -> PipelineConfig {
        PipelineConfig::new(0.5, 0.03, SEVEN.iter().map(|l| emotion(l)).collect()).unwrap()
    }

    #[test]
    fn characterize_politics_column() {
        let table = published_table(
            "politics",
            &[
                ("anger", 0.57, 1.11),
                ("anticipation", 0.42, 0.42),
                ("disgust", 0.32, 0.93),
                ("fear", 0.77, 1.84),
                ("joy", 0.83, 0.69),
                ("sadness", 0.48, 1.33),
                ("surprise", 0.20, 0.32),
            ],
        );
        let rows = characterize(&table, &seven_emotion_config()).unwrap();
        let symbols: Vec<VariationSymbol> = rows.iter().map(|r| r.symbol).collect();
        use VariationSymbol::{Equal as E, LessInFake as L, MoreInFake as M};
        assert_eq!(symbols, vec![M, E, M, M, L, M, M]);
    }

    #[test]
    fn characterize_celebrities_column() {
        let table = published_table(
            "celebrities",
            &[
                ("anger", 0.72, 0.90),
                ("anticipation", 1.32, 0.90),
                ("disgust", 0.42, 0.38),
                ("fear", 1.20, 1.02),
                ("joy", 3.29, 2.22),
                ("sadness", 1.01, 0.96),
                ("surprise", 0.50, 0.31),
            ],
        );
        let rows = characterize(&table, &seven_emotion_config()).unwrap();
        let symbols: Vec<VariationSymbol> = rows.iter().map(|r| r.symbol).collect();
        use VariationSymbol::{LessInFake as L, MoreInFake as M};
        assert_eq!(symbols, vec![M, L, L, L, L, L, L]);
    }

    #[test]
    fn characterize_covid_column_is_eq4_faithful() {
        let table = published_table(
            "covid-19",
            &[
                ("anger", 0.33, 0.77),
                ("anticipation", 0.45, 0.49),
                ("disgust", 1.05, 1.00),
                ("fear", 2.56, 3.05),
                ("joy", 0.28, 0.37),
                ("sadness", 1.63, 1.79),
                ("surprise", 0.34, 0.47),
            ],
        );
        let rows = characterize(&table, &seven_emotion_config()).unwrap();
        let symbols: Vec<VariationSymbol> = rows.iter().map(|r| r.symbol).collect();
        use VariationSymbol::{LessInFake as L, MoreInFake as M};
        // anticipation: V = 0.45 - 0.49 = -0.04 < -0.03, so the faithful
        // symbol is more-in-fake even though the published grid prints the
        // opposite arrow for that cell.
        assert_eq!(symbols, vec![M, M, L, M, M, M, M]);
    }

    #[test]
    fn characterize_rejects_missing_emotion() {
        let table = published_table("politics", &[("anger", 0.5, 0.5)]);
        let config =
            PipelineConfig::new(0.5, 0.03, vec![emotion("anger"), emotion("joy")]).unwrap();
        assert!(matches!(
            characterize(&table, &config),
            Err(PipelineError::EmotionNotInTable(_))
        ));
    }

    #[test]
    fn config_validation() {
        assert!(PipelineConfig::new(0.5, 0.03, vec![emotion("joy")]).is_ok());
        assert!(PipelineConfig::new(-0.1, 0.03, vec![emotion("joy")]).is_err());
        assert!(PipelineConfig::new(1.1, 0.03, vec![emotion("joy")]).is_err());
        assert!(PipelineConfig::new(f64::NAN, 0.03, vec![emotion("joy")]).is_err());
        assert!(PipelineConfig::new(0.5, 0.0, vec![emotion("joy")]).is_err());
        assert!(PipelineConfig::new(0.5, 0.03, vec![]).is_err());
        assert!(
            PipelineConfig::new(0.5, 0.03, vec![emotion("joy"), emotion("joy")]).is_err()
        );
    }

    fn two_document_corpus() -> Corpus {
        Corpus::new(
            "demo",
            vec![
                Publication {
                    id: "1".to_string(),
                    text: "The grim grim news".to_string(),
                    class: PublicationClass::Fake,
                    domain: "demo".to_string(),
                },
                Publication {
                    id: "2".to_string(),
                    text: "The calm report".to_string(),
                    class: PublicationClass::NoFake,
                    domain: "demo".to_string(),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn run_pipeline_small_instance_by_hand() {
        // fake: [grim, grim, news], nofake: [calm, report]; "the" is a
        // stopword. grim carries fear at 0.8, so tau 0.5 emits two markers.
        let lex = lexicon("grim\tfear\t0.80\n");
        let stops = StopwordList::from_words(["the"]).unwrap();
        let config = PipelineConfig::new(
            0.5,
            0.03,
            EmotionVocabulary::default().labels().to_vec(),
        )
        .unwrap();
        let run = run_pipeline(
            two_document_corpus(),
            &lex,
            &Preprocessor::new(stops),
            &config,
        )
        .unwrap();

        assert_eq!(run.duplicates_removed, 0);
        let counts = run.quantification.counts().unwrap();
        assert_eq!(counts.word_counts, ClassPair::new(2, 3));
        assert_eq!(
            counts.emotion_counts.get(&emotion("fear")).unwrap(),
            &ClassPair::new(0, 2)
        );
        assert_eq!(
            run.quantification
                .percentage(&emotion("fear"), PublicationClass::Fake),
            Some(2.0 * 100.0 / 3.0)
        );
        let fear_row = run
            .characterization
            .iter()
            .find(|r| r.emotion == emotion("fear"))
            .unwrap();
        assert_eq!(fear_row.symbol, VariationSymbol::MoreInFake);
    }

    #[test]
    fn run_pipeline_twice_is_bit_identical() {
        let lex = lexicon("grim\tfear\t0.80\ncalm\tjoy\t0.70\n");
        let stops = StopwordList::from_words(["the"]).unwrap();
        let config = PipelineConfig::new(
            0.5,
            0.03,
            EmotionVocabulary::default().labels().to_vec(),
        )
        .unwrap();
        let preprocessor = Preprocessor::new(stops);
        let first = run_pipeline(two_document_corpus(), &lex, &preprocessor, &config).unwrap();
        let second = run_pipeline(two_document_corpus(), &lex, &preprocessor, &config).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn run_pipeline_rejects_empty_corpus() {
        let corpus = Corpus::new("demo", vec![]).unwrap();
        let config =
            PipelineConfig::new(0.5, 0.03, vec![emotion("joy")]).unwrap();
        assert!(matches!(
            run_pipeline(
                corpus,
                &Lexicon::empty(),
                &Preprocessor::default(),
                &config
            ),
            Err(PipelineError::EmptyCorpus)
        ));
    }

    #[test]
    fn run_pipeline_dedups_before_counting() {
        let corpus = Corpus::new(
            "demo",
            vec![
                Publication {
                    id: "1".to_string(),
                    text: "Grim news".to_string(),
                    class: PublicationClass::Fake,
                    domain: "demo".to_string(),
                },
                Publication {
                    id: "2".to_string(),
                    text: "GRIM   news".to_string(),
                    class: PublicationClass::Fake,
                    domain: "demo".to_string(),
                },
            ],
        )
        .unwrap();
        let lex = lexicon("grim\tfear\t1\n");
        let config = PipelineConfig::new(
            0.5,
            0.03,
            EmotionVocabulary::default().labels().to_vec(),
        )
        .unwrap();
        let run = run_pipeline(corpus, &lex, &Preprocessor::default(), &config).unwrap();
        assert_eq!(run.duplicates_removed, 1);
        assert_eq!(run.emotionalized.len(), 1);
        assert_eq!(run.quantification.counts().unwrap().word_counts.fake, 2);
    }

    #[test]
    fn corpus_counts_merge_is_associative_with_observe() {
        let docs = vec![
            EmotionalizedDocument {
                publication_id: "1".to_string(),
                class: PublicationClass::Fake,
                tokens: vec![word("a"), marker("fear")],
            },
            EmotionalizedDocument {
                publication_id: "2".to_string(),
                class: PublicationClass::NoFake,
                tokens: vec![word("b"), word("c"), marker("joy")],
            },
            EmotionalizedDocument {
                publication_id: "3".to_string(),
                class: PublicationClass::Fake,
                tokens: vec![word("d"), marker("fear"), marker("joy")],
            },
        ];
        let whole = CorpusCounts::from_documents(&docs);
        let split = CorpusCounts::from_documents(&docs[..1])
            .merge(CorpusCounts::from_documents(&docs[1..]));
        let reversed = CorpusCounts::from_documents(&docs[1..])
            .merge(CorpusCounts::from_documents(&docs[..1]));
        assert_eq!(whole, split);
        assert_eq!(whole, reversed);
    }
}
