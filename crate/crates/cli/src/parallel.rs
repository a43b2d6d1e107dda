//! Rayon-backed pipeline driver.
//!
//! Per-document preprocessing and emotionalization are pure, so they run in
//! parallel with order-preserving collection. Counting reduces per-document
//! tallies with the associative, commutative merge from the core crate, so
//! the resulting table is identical for every thread count — including the
//! sequential path.

use rayon::prelude::*;

use emovar_core::corpus::{dedup_corpus, Corpus};
use emovar_core::lexicon::Lexicon;
use emovar_core::pipeline::{
    characterize, emotionalize_document, CorpusCounts, EmotionalizedDocument, PipelineConfig,
    PipelineError, PipelineRun, QuantificationTable,
};
use emovar_core::preprocess::{normalize, Preprocessor};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThreadedRunError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Dedups and emotionalizes a corpus with the current rayon pool.
pub fn emotionalize_publications(
    corpus: Corpus,
    lexicon: &Lexicon,
    preprocessor: &Preprocessor,
    tau: f64,
) -> (Vec<EmotionalizedDocument>, usize) {
    let deduped = dedup_corpus(corpus, normalize);
    let documents = deduped
        .corpus
        .publications()
        .par_iter()
        .map(|publication| {
            emotionalize_document(
                &preprocessor.preprocess(publication),
                publication.class,
                lexicon,
                tau,
            )
        })
        .collect();
    (documents, deduped.removed)
}

fn run_in_pool(
    corpus: Corpus,
    lexicon: &Lexicon,
    preprocessor: &Preprocessor,
    config: &PipelineConfig,
) -> Result<PipelineRun, PipelineError> {
    if corpus.is_empty() {
        return Err(PipelineError::EmptyCorpus);
    }
    let domain = corpus.domain().to_string();
    let (emotionalized, duplicates_removed) =
        emotionalize_publications(corpus, lexicon, preprocessor, config.tau());

    let counts = emotionalized
        .par_iter()
        .fold(CorpusCounts::new, |mut acc, document| {
            acc.observe(document);
            acc
        })
        .reduce(CorpusCounts::new, CorpusCounts::merge);

    let quantification = QuantificationTable::from_counts(&domain, config.emotions(), counts);
    let characterization = characterize(&quantification, config)?;
    Ok(PipelineRun {
        quantification,
        characterization,
        emotionalized,
        duplicates_removed,
    })
}

/// Full pipeline run on `threads` worker threads (`None` uses the global
/// pool). Output is identical to the sequential core pipeline.
pub fn run_pipeline_threaded(
    corpus: Corpus,
    lexicon: &Lexicon,
    preprocessor: &Preprocessor,
    config: &PipelineConfig,
    threads: Option<usize>,
) -> Result<PipelineRun, ThreadedRunError> {
    match threads {
        None => Ok(run_in_pool(corpus, lexicon, preprocessor, config)?),
        Some(count) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(count).build()?;
            Ok(pool.install(|| run_in_pool(corpus, lexicon, preprocessor, config))?)
        }
    }
}
