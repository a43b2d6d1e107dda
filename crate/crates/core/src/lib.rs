//! Three-layer emotion analysis for labeled text corpora.
//!
//! The pipeline tags every word whose lexicon intensity meets a threshold
//! with its associated emotions (emotionalization), turns marker frequencies
//! into per-class percentages (quantification), and contrasts the two
//! publication classes into up/down/equal variation symbols
//! (characterization).
//!
//! This crate is `no_std` + `alloc` and holds the pure algorithmic layers.
//! File IO, report rendering, ingestion formats, and the command-line front
//! end live in the companion `emovar` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod lexicon;
pub mod pipeline;
pub mod preprocess;
pub mod sensitivity;

pub use corpus::{dedup_corpus, Corpus, DedupResult, Publication, PublicationClass};
pub use lexicon::{parse_lexicon, EmotionId, EmotionVocabulary, Lexicon, SourceKind};
pub use pipeline::{
    characterize, classify, contrast, emotionalize_corpus, emotionalize_document,
    emotionalize_word, quantify, run_pipeline, CharacterizationRow, ClassPair, CorpusCounts,
    PipelineConfig, PipelineRun, QuantificationTable, Token, VariationSymbol, DEFAULT_MU,
    DEFAULT_TAU,
};
pub use preprocess::{normalize, preprocess, Preprocessor, StopwordList, TokenizedDocument};
pub use sensitivity::{mu_sensitivity, symbols_unchanged_at, BindingCell, MuSensitivity};
