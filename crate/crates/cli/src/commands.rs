//! Subcommand implementations.
//!
//! Every anticipated failure — missing files, parse errors, configuration
//! violations — is a [`AppError::Usage`] carrying a message that names the
//! offending file or flag, and exits with status 2. Unexpected environment
//! failures (e.g. an output file that cannot be written) are
//! [`AppError::Internal`] and exit with status 1.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use emovar_core::lexicon::{
    parse_lexicon, EmotionId, EmotionVocabulary, ParseOptions, ParsedLexicon,
};
use emovar_core::pipeline::{characterize, quantify, PipelineConfig, PipelineError, DEFAULT_TAU};
use emovar_core::preprocess::{Preprocessor, StopwordList};

use crate::ingest::{ingest, CorpusFormat, FieldMap, IngestOutcome, LabelMap};
use crate::parallel::{emotionalize_publications, run_pipeline_threaded, ThreadedRunError};
use crate::report::{
    render_characterization_report, render_quantification, DomainRows, ReportFormat,
};
use crate::wire::{
    read_emotionalized, read_quantification_csv, read_quantification_json, write_emotionalized,
    LoadedQuantification,
};

#[derive(Debug, Error)]
pub enum AppError {
    /// Usage, configuration, or input parse problem → exit status 2.
    #[error("{0}")]
    Usage(String),
    /// Unexpected environment failure → exit status 1.
    #[error("{0}")]
    Internal(String),
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Internal(_) => 1,
        }
    }
}

fn usage(message: impl Into<String>) -> AppError {
    AppError::Usage(message.into())
}

fn read_file(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{}`: {e}", path.display())))
}

/// Writes to `out`, or to stdout when absent.
fn write_output(out: Option<&Path>, content: &str) -> Result<(), AppError> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| {
            AppError::Internal(format!("cannot write `{}`: {e}", path.display()))
        }),
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| AppError::Internal(format!("stdout: {e}")))
        }
    }
}

pub fn parse_emotion_list(spec: &str) -> Result<Vec<EmotionId>, AppError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|label| {
            EmotionId::new(label).map_err(|e| usage(format!("--emotions/--vocabulary: {e}")))
        })
        .collect()
}

pub fn build_vocabulary(labels: Option<&[String]>) -> Result<EmotionVocabulary, AppError> {
    match labels {
        None => Ok(EmotionVocabulary::default()),
        Some(labels) => {
            let ids = labels
                .iter()
                .map(|l| EmotionId::new(l))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage(format!("vocabulary: {e}")))?;
            EmotionVocabulary::new(ids).map_err(|e| usage(format!("vocabulary: {e}")))
        }
    }
}

/// Loads and parses a lexicon file, reporting skip counters on stderr.
pub fn load_lexicon(
    path: &Path,
    has_header: bool,
    vocabulary: &EmotionVocabulary,
) -> Result<ParsedLexicon, AppError> {
    let text = read_file(path)?;
    let parsed = parse_lexicon(&text, vocabulary, ParseOptions { has_header })
        .map_err(|e| usage(format!("lexicon `{}`: {e}", path.display())))?;
    if parsed.skipped_total() > 0 {
        let detail: Vec<String> = parsed
            .skipped_out_of_vocabulary
            .iter()
            .map(|(label, count)| format!("{label}: {count}"))
            .collect();
        eprintln!(
            "warning: lexicon `{}`: skipped {} out-of-vocabulary lines ({})",
            path.display(),
            parsed.skipped_total(),
            detail.join(", ")
        );
    }
    Ok(parsed)
}

pub fn load_stopwords(path: Option<&Path>) -> Result<StopwordList, AppError> {
    match path {
        None => Ok(StopwordList::empty()),
        Some(path) => {
            let text = read_file(path)?;
            StopwordList::parse(&text)
                .map_err(|e| usage(format!("stopwords `{}`: {e}", path.display())))
        }
    }
}

/// One corpus file with its domain tag and mapping configuration.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub path: PathBuf,
    pub domain: String,
    pub format: CorpusFormat,
    pub fields: FieldMap,
    pub labels: LabelMap,
}

impl CorpusSpec {
    /// Default domain tag: the file stem.
    pub fn domain_for(path: &Path, explicit: Option<&str>) -> String {
        match explicit {
            Some(domain) => domain.to_string(),
            None => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "corpus".to_string()),
        }
    }
}

fn ingest_spec(spec: &CorpusSpec) -> Result<IngestOutcome, AppError> {
    let file = fs::File::open(&spec.path)
        .map_err(|e| usage(format!("cannot read `{}`: {e}", spec.path.display())))?;
    let outcome = ingest(file, spec.format, &spec.fields, &spec.labels, &spec.domain)
        .map_err(|e| usage(format!("corpus `{}`: {e}", spec.path.display())))?;
    if outcome.dropped_empty_text > 0 {
        eprintln!(
            "warning: corpus `{}`: dropped {} rows with empty text",
            spec.path.display(),
            outcome.dropped_empty_text
        );
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub format: ReportFormat,
    pub decimals: u32,
    pub ascii: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            format: ReportFormat::Text,
            decimals: 2,
            ascii: false,
        }
    }
}

#[derive(Debug)]
pub struct RunSettings {
    pub lexicon: PathBuf,
    pub lexicon_has_header: bool,
    pub stopwords: Option<PathBuf>,
    pub corpora: Vec<CorpusSpec>,
    pub tau: f64,
    pub mu: f64,
    pub vocabulary: EmotionVocabulary,
    /// Analysis emotions, an ordered subset of the vocabulary.
    pub emotions: Vec<EmotionId>,
    pub drop_numeric: bool,
    pub threads: Option<usize>,
    pub report: ReportOptions,
    /// Report directory; stdout when absent.
    pub out: Option<PathBuf>,
    pub emit_intermediate: bool,
}

fn filename_safe(domain: &str) -> String {
    domain
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn map_run_error(domain: &str, error: ThreadedRunError) -> AppError {
    match error {
        ThreadedRunError::Pipeline(PipelineError::EmptyCorpus) => {
            usage(format!("domain `{domain}`: corpus has no publications"))
        }
        ThreadedRunError::Pipeline(e) => usage(format!("domain `{domain}`: {e}")),
        ThreadedRunError::Pool(e) => AppError::Internal(format!("thread pool: {e}")),
    }
}

/// Runs the full pipeline for every corpus in the manifest and writes
/// quantification reports (one per domain), a combined characterization
/// report, and optionally the emotionalized intermediate streams.
pub fn cmd_run(settings: &RunSettings) -> Result<(), AppError> {
    if settings.corpora.is_empty() {
        return Err(usage(
            "no corpus configured: pass --corpus or a manifest with [[corpus]] entries",
        ));
    }
    if settings.emit_intermediate && settings.out.is_none() {
        return Err(usage("--emit-intermediate requires --out DIR"));
    }

    let emotions = settings
        .vocabulary
        .subset(&settings.emotions)
        .map_err(|e| usage(format!("--emotions: {e}")))?;
    let config = PipelineConfig::new(settings.tau, settings.mu, emotions)
        .map_err(|e| usage(format!("configuration: {e}")))?;

    let lexicon = load_lexicon(
        &settings.lexicon,
        settings.lexicon_has_header,
        &settings.vocabulary,
    )?
    .lexicon;
    let stops = load_stopwords(settings.stopwords.as_deref())?;
    let preprocessor = Preprocessor::new(stops).drop_numeric(settings.drop_numeric);

    let mut corpora = Vec::new();
    for spec in &settings.corpora {
        corpora.extend(ingest_spec(spec)?.corpora);
    }
    for (index, corpus) in corpora.iter().enumerate() {
        if corpora[..index].iter().any(|c| c.domain() == corpus.domain()) {
            return Err(usage(format!(
                "domain `{}` appears more than once; give each corpus a unique --domain/tag",
                corpus.domain()
            )));
        }
    }

    if let Some(dir) = &settings.out {
        fs::create_dir_all(dir)
            .map_err(|e| AppError::Internal(format!("cannot create `{}`: {e}", dir.display())))?;
    }

    let mut characterizations: Vec<DomainRows> = Vec::new();
    for corpus in corpora {
        let domain = corpus.domain().to_string();
        let run = run_pipeline_threaded(corpus, &lexicon, &preprocessor, &config, settings.threads)
            .map_err(|e| map_run_error(&domain, e))?;

        if run.duplicates_removed > 0 {
            eprintln!(
                "warning: domain `{domain}`: removed {} duplicate publications",
                run.duplicates_removed
            );
        }
        for class in run.quantification.degenerate_classes() {
            eprintln!("warning: domain `{domain}`: class {class} has zero words");
        }

        let quantification = render_quantification(
            &run.quantification,
            settings.report.format,
            settings.report.decimals,
        );
        match &settings.out {
            Some(dir) => {
                let path = dir.join(format!(
                    "{}.quantification.{}",
                    filename_safe(&domain),
                    settings.report.format.extension()
                ));
                write_output(Some(&path), &quantification)?;
                if settings.emit_intermediate {
                    let path = dir.join(format!("{}.emotionalized.jsonl", filename_safe(&domain)));
                    let mut buffer = Vec::new();
                    write_emotionalized(&mut buffer, &run.emotionalized)
                        .map_err(|e| AppError::Internal(format!("intermediate: {e}")))?;
                    fs::write(&path, buffer).map_err(|e| {
                        AppError::Internal(format!("cannot write `{}`: {e}", path.display()))
                    })?;
                }
            }
            None => {
                println!("== quantification: {domain} ==");
                write_output(None, &quantification)?;
            }
        }

        characterizations.push((domain, run.characterization));
    }

    let characterization = render_characterization_report(
        &characterizations,
        settings.report.format,
        settings.report.ascii,
        None,
    );
    match &settings.out {
        Some(dir) => {
            let path = dir.join(format!(
                "characterization.{}",
                settings.report.format.extension()
            ));
            write_output(Some(&path), &characterization)?;
        }
        None => {
            println!("== characterization ==");
            write_output(None, &characterization)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantInputFormat {
    Csv,
    Json,
}

impl QuantInputFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text.to_lowercase().as_str() {
            "csv" => Some(QuantInputFormat::Csv),
            "json" => Some(QuantInputFormat::Json),
            _ => None,
        }
    }

    fn infer(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "csv" => Some(QuantInputFormat::Csv),
            "json" => Some(QuantInputFormat::Json),
            _ => None,
        }
    }
}

/// Runs only the characterization layer on a quantification file, comparing
/// against the file's expected symbols when present.
pub fn cmd_characterize(
    input: &Path,
    format: Option<QuantInputFormat>,
    mu: f64,
    report: &ReportOptions,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let format = format
        .or_else(|| QuantInputFormat::infer(input))
        .ok_or_else(|| {
            usage(format!(
                "cannot infer input format of `{}`: pass --input-format csv|json",
                input.display()
            ))
        })?;
    let text = read_file(input)?;
    let LoadedQuantification { tables, expected } = match format {
        QuantInputFormat::Csv => read_quantification_csv(text.as_bytes()),
        QuantInputFormat::Json => read_quantification_json(&text),
    }
    .map_err(|e| usage(format!("quantification `{}`: {e}", input.display())))?;

    let mut domains: Vec<DomainRows> = Vec::new();
    for table in &tables {
        let config = PipelineConfig::new(DEFAULT_TAU, mu, table.emotions().to_vec())
            .map_err(|e| usage(format!("--mu: {e}")))?;
        let rows = characterize(table, &config)
            .map_err(|e| usage(format!("characterize `{}`: {e}", table.domain())))?;
        domains.push((table.domain().to_string(), rows));
    }

    let expected = if expected.is_empty() {
        None
    } else {
        Some(&expected)
    };
    let rendered =
        render_characterization_report(&domains, report.format, report.ascii, expected);
    write_output(out, &rendered)
}

/// Quantifies an emotionalized JSONL stream written by `run
/// --emit-intermediate` or `emotionalize`.
pub fn cmd_quantify(
    input: &Path,
    domain: &str,
    emotions: &[EmotionId],
    report: &ReportOptions,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let file = fs::File::open(input)
        .map_err(|e| usage(format!("cannot read `{}`: {e}", input.display())))?;
    let documents = read_emotionalized(file)
        .map_err(|e| usage(format!("emotionalized `{}`: {e}", input.display())))?;
    let table = quantify(&documents, emotions, domain);
    for class in table.degenerate_classes() {
        eprintln!("warning: domain `{domain}`: class {class} has zero words");
    }
    write_output(out, &render_quantification(&table, report.format, report.decimals))
}

/// Runs ingestion, dedup, preprocessing, and emotionalization, writing the
/// intermediate JSONL stream.
#[allow(clippy::too_many_arguments)]
pub fn cmd_emotionalize(
    spec: &CorpusSpec,
    lexicon_path: &Path,
    lexicon_has_header: bool,
    stopwords: Option<&Path>,
    tau: f64,
    drop_numeric: bool,
    vocabulary: &EmotionVocabulary,
    out: Option<&Path>,
) -> Result<(), AppError> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(usage(format!("--tau: {tau} is outside [0, 1]")));
    }
    let lexicon = load_lexicon(lexicon_path, lexicon_has_header, vocabulary)?.lexicon;
    let stops = load_stopwords(stopwords)?;
    let preprocessor = Preprocessor::new(stops).drop_numeric(drop_numeric);

    let outcome = ingest_spec(spec)?;
    if outcome.corpora.len() > 1 {
        return Err(usage(format!(
            "corpus `{}` contains {} domains; emotionalize expects one (use `run` with a manifest)",
            spec.path.display(),
            outcome.corpora.len()
        )));
    }
    let mut documents = Vec::new();
    let mut removed = 0;
    for corpus in outcome.corpora {
        let (docs, dropped) = emotionalize_publications(corpus, &lexicon, &preprocessor, tau);
        documents.extend(docs);
        removed += dropped;
    }
    if removed > 0 {
        eprintln!("warning: removed {removed} duplicate publications");
    }

    let mut buffer = Vec::new();
    write_emotionalized(&mut buffer, &documents)
        .map_err(|e| AppError::Internal(format!("emotionalized stream: {e}")))?;
    let content = String::from_utf8(buffer).expect("jsonl is utf-8");
    write_output(out, &content)
}

/// Parses a lexicon and prints a summary; parse failures exit with status 2.
pub fn cmd_validate_lexicon(
    path: &Path,
    has_header: bool,
    vocabulary: &EmotionVocabulary,
) -> Result<(), AppError> {
    let parsed = load_lexicon(path, has_header, vocabulary)?;
    let mut out = format!("lexicon: {}\n", path.display());
    out.push_str(&format!("words: {}\n", parsed.lexicon.word_count()));
    out.push_str(&format!("entries: {}\n", parsed.lexicon.entry_count()));
    out.push_str(&format!("source kind: {}\n", parsed.lexicon.source_kind()));
    if parsed.skipped_total() > 0 {
        let detail: Vec<String> = parsed
            .skipped_out_of_vocabulary
            .iter()
            .map(|(label, count)| format!("{label}: {count}"))
            .collect();
        out.push_str(&format!(
            "skipped out-of-vocabulary lines: {} ({})\n",
            parsed.skipped_total(),
            detail.join(", ")
        ));
    } else {
        out.push_str("skipped out-of-vocabulary lines: 0\n");
    }
    write_output(None, &out)
}
