//! `emovar` — quantify and contrast emotion usage between fake and non-fake
//! labeled publications.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use emovar::commands::{
    build_vocabulary, cmd_characterize, cmd_emotionalize, cmd_quantify, cmd_run,
    cmd_validate_lexicon, parse_emotion_list, AppError, CorpusSpec, QuantInputFormat,
    ReportOptions, RunSettings,
};
use emovar::ingest::{CorpusFormat, FieldMap, LabelMap};
use emovar::manifest::{load_manifest, RunManifest};
use emovar::report::ReportFormat;
use emovar_core::pipeline::{DEFAULT_MU, DEFAULT_TAU};

#[derive(Parser)]
#[command(
    name = "emovar",
    version,
    about = "Lexicon-based emotion quantification and contrast for labeled text corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline over one or more corpora and write reports.
    Run(Box<RunArgs>),
    /// Characterize a quantification file (csv/json) without any corpus.
    Characterize(CharacterizeArgs),
    /// Quantify an emotionalized JSONL stream.
    Quantify(QuantifyArgs),
    /// Emotionalize a corpus and write the intermediate JSONL stream.
    Emotionalize(Box<EmotionalizeArgs>),
    /// Parse a lexicon file and print a summary.
    ValidateLexicon(ValidateLexiconArgs),
}

#[derive(Args, Clone)]
struct CorpusArgs {
    /// Corpus file.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Domain tag for the corpus (default: the file stem).
    #[arg(long)]
    domain: Option<String>,
    /// Corpus file format.
    #[arg(long, value_parser = parse_corpus_format)]
    format: Option<CorpusFormat>,
    /// Column/key holding the publication id.
    #[arg(long, default_value = "id")]
    id_field: String,
    /// Column/key holding the text.
    #[arg(long, default_value = "text")]
    text_field: String,
    /// Column/key holding the class label.
    #[arg(long, default_value = "label")]
    label_field: String,
    /// Optional column/key holding the domain.
    #[arg(long)]
    domain_field: Option<String>,
    /// Label mapping, e.g. `fake=Fake,real=NoFake` (default: fake/nofake).
    #[arg(long)]
    label_map: Option<String>,
}

#[derive(Args, Clone)]
struct LexiconArgs {
    /// Lexicon file (tab-separated word/emotion/intensity).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Skip the first lexicon line.
    #[arg(long)]
    lexicon_has_header: bool,
}

#[derive(Args, Clone)]
struct ReportArgs {
    /// Decimal places for displayed percentages.
    #[arg(long)]
    decimals: Option<u32>,
    /// Render symbols as up/down/eq instead of the glyphs.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Run manifest (TOML). Flags override manifest values.
    #[arg(long, env = "EMOVAR_CONFIG")]
    config: Option<PathBuf>,
    #[command(flatten)]
    lexicon: LexiconArgs,
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Stopword file, one token per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Emotionalization threshold in [0, 1].
    #[arg(long)]
    tau: Option<f64>,
    /// Characterization margin, strictly positive.
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated analysis emotions (subset of the vocabulary).
    #[arg(long)]
    emotions: Option<String>,
    /// Comma-separated emotion vocabulary (default: the 8 stock emotions).
    #[arg(long)]
    vocabulary: Option<String>,
    /// Drop purely numeric tokens.
    #[arg(long)]
    drop_numeric: bool,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// Report format: text, markdown, csv, or json.
    #[arg(long, value_parser = parse_report_format)]
    report_format: Option<ReportFormat>,
    #[command(flatten)]
    report: ReportArgs,
    /// Report directory (default: print to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additionally write each domain's emotionalized JSONL stream.
    #[arg(long)]
    emit_intermediate: bool,
}

#[derive(Args)]
struct CharacterizeArgs {
    /// Quantification file (csv or json).
    input: PathBuf,
    /// Input format (default: inferred from the extension).
    #[arg(long, value_parser = parse_quant_input_format)]
    input_format: Option<QuantInputFormat>,
    /// Characterization margin, strictly positive.
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Report format: text, markdown, csv, or json.
    #[arg(long, value_parser = parse_report_format)]
    format: Option<ReportFormat>,
    #[command(flatten)]
    report: ReportArgs,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuantifyArgs {
    /// Emotionalized JSONL stream.
    input: PathBuf,
    /// Domain tag for the report.
    #[arg(long, default_value = "corpus")]
    domain: String,
    /// Comma-separated analysis emotions (subset of the vocabulary).
    #[arg(long)]
    emotions: Option<String>,
    /// Comma-separated emotion vocabulary (default: the 8 stock emotions).
    #[arg(long)]
    vocabulary: Option<String>,
    /// Report format: text, markdown, csv, or json.
    #[arg(long, value_parser = parse_report_format)]
    format: Option<ReportFormat>,
    #[command(flatten)]
    report: ReportArgs,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmotionalizeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    lexicon: LexiconArgs,
    /// Stopword file, one token per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Emotionalization threshold in [0, 1].
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    /// Comma-separated emotion vocabulary (default: the 8 stock emotions).
    #[arg(long)]
    vocabulary: Option<String>,
    /// Drop purely numeric tokens.
    #[arg(long)]
    drop_numeric: bool,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateLexiconArgs {
    #[command(flatten)]
    lexicon: LexiconArgs,
    /// Comma-separated emotion vocabulary (default: the 8 stock emotions).
    #[arg(long)]
    vocabulary: Option<String>,
}

fn parse_corpus_format(text: &str) -> Result<CorpusFormat, String> {
    CorpusFormat::parse(text).ok_or_else(|| format!("unknown corpus format `{text}` (csv|jsonl)"))
}

fn parse_report_format(text: &str) -> Result<ReportFormat, String> {
    ReportFormat::parse(text)
        .ok_or_else(|| format!("unknown report format `{text}` (text|markdown|csv|json)"))
}

fn parse_quant_input_format(text: &str) -> Result<QuantInputFormat, String> {
    QuantInputFormat::parse(text).ok_or_else(|| format!("unknown input format `{text}` (csv|json)"))
}

fn vocabulary_labels(flag: Option<&str>) -> Result<Option<Vec<String>>, AppError> {
    match flag {
        None => Ok(None),
        Some(spec) => Ok(Some(
            parse_emotion_list(spec)?
                .into_iter()
                .map(|e| e.as_str().to_string())
                .collect(),
        )),
    }
}

fn corpus_format_for(
    path: &std::path::Path,
    explicit: Option<CorpusFormat>,
    manifest: Option<&str>,
) -> Result<CorpusFormat, AppError> {
    if let Some(format) = explicit {
        return Ok(format);
    }
    if let Some(name) = manifest {
        return CorpusFormat::parse(name)
            .ok_or_else(|| AppError::Usage(format!("unknown corpus format `{name}`")));
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(CorpusFormat::Csv),
        Some("jsonl" | "ndjson") => Ok(CorpusFormat::Jsonl),
        _ => Err(AppError::Usage(format!(
            "cannot infer format of `{}`: pass --format csv|jsonl",
            path.display()
        ))),
    }
}

fn label_map_from(
    flag: Option<&str>,
    manifest: Option<&std::collections::BTreeMap<String, String>>,
) -> Result<LabelMap, AppError> {
    if let Some(spec) = flag {
        return LabelMap::parse_flag(spec).map_err(|e| AppError::Usage(format!("--label-map: {e}")));
    }
    match manifest {
        None => Ok(LabelMap::default()),
        Some(entries) => {
            let mut map = LabelMap::empty();
            for (label, class) in entries {
                let class = emovar_core::corpus::PublicationClass::parse(class).ok_or_else(|| {
                    AppError::Usage(format!(
                        "label_map: `{class}` is not a class (Fake or NoFake)"
                    ))
                })?;
                map.insert(label, class);
            }
            Ok(map)
        }
    }
}

fn corpus_spec_from_flags(args: &CorpusArgs) -> Result<Option<CorpusSpec>, AppError> {
    let Some(path) = &args.corpus else {
        return Ok(None);
    };
    let format = corpus_format_for(path, args.format, None)?;
    Ok(Some(CorpusSpec {
        path: path.clone(),
        domain: CorpusSpec::domain_for(path, args.domain.as_deref()),
        format,
        fields: FieldMap {
            id: args.id_field.clone(),
            text: args.text_field.clone(),
            label: args.label_field.clone(),
            domain: args.domain_field.clone(),
        },
        labels: label_map_from(args.label_map.as_deref(), None)?,
    }))
}

fn resolve_run(args: &RunArgs) -> Result<RunSettings, AppError> {
    let manifest = match &args.config {
        Some(path) => load_manifest(path).map_err(|e| AppError::Usage(e.to_string()))?,
        None => RunManifest::default(),
    };

    let vocabulary_spec = vocabulary_labels(args.vocabulary.as_deref())?
        .or_else(|| manifest.vocabulary.clone());
    let vocabulary = build_vocabulary(vocabulary_spec.as_deref())?;

    let emotions = match (&args.emotions, &manifest.emotions) {
        (Some(spec), _) => parse_emotion_list(spec)?,
        (None, Some(labels)) => {
            let joined = labels.join(",");
            parse_emotion_list(&joined)?
        }
        (None, None) => vocabulary.labels().to_vec(),
    };

    let lexicon = args
        .lexicon
        .lexicon
        .clone()
        .or(manifest.lexicon)
        .ok_or_else(|| {
            AppError::Usage("missing lexicon: pass --lexicon or set `lexicon` in the manifest".into())
        })?;

    // A corpus given by flags is used alone; otherwise all manifest entries.
    let corpora = match corpus_spec_from_flags(&args.corpus)? {
        Some(spec) => vec![spec],
        None => manifest
            .corpora
            .iter()
            .map(|entry| {
                let format =
                    corpus_format_for(&entry.path, args.corpus.format, entry.format.as_deref())?;
                Ok(CorpusSpec {
                    path: entry.path.clone(),
                    domain: CorpusSpec::domain_for(&entry.path, entry.domain.as_deref()),
                    format,
                    fields: FieldMap {
                        id: entry.id_field.clone().unwrap_or_else(|| "id".into()),
                        text: entry.text_field.clone().unwrap_or_else(|| "text".into()),
                        label: entry.label_field.clone().unwrap_or_else(|| "label".into()),
                        domain: entry.domain_field.clone(),
                    },
                    labels: label_map_from(args.corpus.label_map.as_deref(), entry.label_map.as_ref())?,
                })
            })
            .collect::<Result<Vec<_>, AppError>>()?,
    };

    let report_format = args
        .report_format
        .or_else(|| manifest.report.format.as_deref().and_then(ReportFormat::parse))
        .unwrap_or(ReportFormat::Text);

    Ok(RunSettings {
        lexicon,
        lexicon_has_header: args.lexicon.lexicon_has_header || manifest.lexicon_has_header,
        stopwords: args.stopwords.clone().or(manifest.stopwords),
        corpora,
        tau: args.tau.or(manifest.tau).unwrap_or(DEFAULT_TAU),
        mu: args.mu.or(manifest.mu).unwrap_or(DEFAULT_MU),
        vocabulary,
        emotions,
        drop_numeric: args.drop_numeric || manifest.drop_numeric,
        threads: args.threads.or(manifest.threads),
        report: ReportOptions {
            format: report_format,
            decimals: args.report.decimals.or(manifest.report.decimals).unwrap_or(2),
            ascii: args.report.ascii || manifest.report.ascii,
        },
        out: args.out.clone().or(manifest.report.out),
        emit_intermediate: args.emit_intermediate || manifest.report.emit_intermediate,
    })
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Run(args) => {
            let settings = resolve_run(&args)?;
            cmd_run(&settings)
        }
        Command::Characterize(args) => cmd_characterize(
            &args.input,
            args.input_format,
            args.mu,
            &ReportOptions {
                format: args.format.unwrap_or(ReportFormat::Text),
                decimals: args.report.decimals.unwrap_or(2),
                ascii: args.report.ascii,
            },
            args.out.as_deref(),
        ),
        Command::Quantify(args) => {
            let vocabulary_spec = vocabulary_labels(args.vocabulary.as_deref())?;
            let vocabulary = build_vocabulary(vocabulary_spec.as_deref())?;
            let emotions = match &args.emotions {
                Some(spec) => vocabulary
                    .subset(&parse_emotion_list(spec)?)
                    .map_err(|e| AppError::Usage(format!("--emotions: {e}")))?,
                None => vocabulary.labels().to_vec(),
            };
            cmd_quantify(
                &args.input,
                &args.domain,
                &emotions,
                &ReportOptions {
                    format: args.format.unwrap_or(ReportFormat::Text),
                    decimals: args.report.decimals.unwrap_or(2),
                    ascii: args.report.ascii,
                },
                args.out.as_deref(),
            )
        }
        Command::Emotionalize(args) => {
            let spec = corpus_spec_from_flags(&args.corpus)?
                .ok_or_else(|| AppError::Usage("missing --corpus".into()))?;
            let lexicon = args
                .lexicon
                .lexicon
                .as_deref()
                .ok_or_else(|| AppError::Usage("missing --lexicon".into()))?;
            let vocabulary_spec = vocabulary_labels(args.vocabulary.as_deref())?;
            let vocabulary = build_vocabulary(vocabulary_spec.as_deref())?;
            cmd_emotionalize(
                &spec,
                lexicon,
                args.lexicon.lexicon_has_header,
                args.stopwords.as_deref(),
                args.tau,
                args.drop_numeric,
                &vocabulary,
                args.out.as_deref(),
            )
        }
        Command::ValidateLexicon(args) => {
            let lexicon = args
                .lexicon
                .lexicon
                .as_deref()
                .ok_or_else(|| AppError::Usage("missing --lexicon".into()))?;
            let vocabulary_spec = vocabulary_labels(args.vocabulary.as_deref())?;
            let vocabulary = build_vocabulary(vocabulary_spec.as_deref())?;
            cmd_validate_lexicon(lexicon, args.lexicon.lexicon_has_header, &vocabulary)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
