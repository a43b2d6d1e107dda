//! On-disk formats: the emotionalized-corpus JSONL stream and the
//! quantification tables consumed by the standalone characterization layer.
//!
//! Emotionalized JSONL carries one document per line:
//!
//! ```text
//! {"id":"42","class":"fake","tokens":[{"w":"grim"},{"e":"fear"},{"w":"news"}]}
//! ```
//!
//! Quantification input is either CSV with `domain,emotion,no_fake_pct,
//! fake_pct` columns (plus an optional `expected` symbol column) or the JSON
//! document emitted by the quantification renderer.

use std::collections::BTreeMap;
use std::io::{BufRead, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use emovar_core::corpus::PublicationClass;
use emovar_core::lexicon::EmotionId;
use emovar_core::pipeline::{
    ClassPair, EmotionalizedDocument, QuantificationTable, TableError, Token, VariationSymbol,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum WireToken {
    Word { w: String },
    Marker { e: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct WireDocument {
    id: String,
    class: String,
    tokens: Vec<WireToken>,
}

#[derive(Debug, Error)]
pub enum WireError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: u64,
        source: serde_json::Error,
    },
    #[error("line {line}: unknown class `{value}`")]
    BadClass { value: String, line: u64 },
    #[error("line {line}: bad emotion label `{value}`")]
    BadEmotion { value: String, line: u64 },
}

/// Writes one JSON document per line, in input order.
pub fn write_emotionalized<W: Write>(
    mut writer: W,
    documents: &[EmotionalizedDocument],
) -> Result<(), WireError> {
    for document in documents {
        let wire = WireDocument {
            id: document.publication_id.clone(),
            class: document.class.label().to_string(),
            tokens: document
                .tokens
                .iter()
                .map(|token| match token {
                    Token::Word(w) => WireToken::Word { w: w.clone() },
                    Token::Marker(e) => WireToken::Marker {
                        e: e.as_str().to_string(),
                    },
                })
                .collect(),
        };
        let line = serde_json::to_string(&wire).map_err(|e| WireError::Json { line: 0, source: e })?;
        writer.write_all(line.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads an emotionalized corpus written by [`write_emotionalized`].
pub fn read_emotionalized<R: Read>(reader: R) -> Result<Vec<EmotionalizedDocument>, WireError> {
    let mut documents = Vec::new();
    for (index, line) in std::io::BufReader::new(reader).lines().enumerate() {
        let line_no = index as u64 + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let wire: WireDocument = serde_json::from_str(&line).map_err(|e| WireError::Json {
            line: line_no,
            source: e,
        })?;
        let class = PublicationClass::parse(&wire.class).ok_or_else(|| WireError::BadClass {
            value: wire.class.clone(),
            line: line_no,
        })?;
        let mut tokens = Vec::with_capacity(wire.tokens.len());
        for token in wire.tokens {
            tokens.push(match token {
                WireToken::Word { w } => Token::Word(w),
                WireToken::Marker { e } => {
                    let emotion = EmotionId::new(&e).map_err(|_| WireError::BadEmotion {
                        value: e.clone(),
                        line: line_no,
                    })?;
                    Token::Marker(emotion)
                }
            });
        }
        documents.push(EmotionalizedDocument {
            publication_id: wire.id,
            class,
            tokens,
        });
    }
    Ok(documents)
}

/// JSON schema of a rendered quantification table.
#[derive(Debug, Serialize, Deserialize)]
pub struct QuantificationJson {
    pub domain: String,
    pub rows: Vec<QuantificationRowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_counts: Option<WordCountsJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degenerate_classes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QuantificationRowJson {
    pub emotion: String,
    pub no_fake_pct: f64,
    pub fake_pct: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_fake_display: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fake_display: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_fake_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fake_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WordCountsJson {
    pub no_fake: u64,
    pub fake: u64,
}

/// Expected symbols keyed by `(domain, emotion)`, from the optional
/// `expected` column of a quantification file.
pub type ExpectedSymbols = BTreeMap<(String, EmotionId), VariationSymbol>;

/// Quantification tables read from disk, plus any expected symbols.
#[derive(Debug)]
pub struct LoadedQuantification {
    pub tables: Vec<QuantificationTable>,
    pub expected: ExpectedSymbols,
}

#[derive(Debug, Error)]
pub enum QuantInputError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("missing class column `{0}`")]
    MissingColumn(String),
    #[error("line {line}: bad emotion label `{value}`")]
    BadEmotion { value: String, line: u64 },
    #[error("line {line}: `{value}` is not a number")]
    BadNumber { value: String, line: u64 },
    #[error("line {line}: unknown symbol `{value}` (expected up/down/eq or the glyphs)")]
    BadSymbol { value: String, line: u64 },
    #[error("duplicate row for domain `{domain}`, emotion `{emotion}`")]
    DuplicateRow { domain: String, emotion: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("no data rows found")]
    Empty,
}

struct PercentRow {
    domain: String,
    emotion: EmotionId,
    values: ClassPair<f64>,
    expected: Option<VariationSymbol>,
}

fn assemble(rows: Vec<PercentRow>) -> Result<LoadedQuantification, QuantInputError> {
    if rows.is_empty() {
        return Err(QuantInputError::Empty);
    }
    let mut order: Vec<String> = Vec::new();
    let mut grouped: BTreeMap<String, Vec<(EmotionId, ClassPair<f64>)>> = BTreeMap::new();
    let mut expected = ExpectedSymbols::new();
    for row in rows {
        let group = grouped.entry(row.domain.clone()).or_insert_with(|| {
            order.push(row.domain.clone());
            Vec::new()
        });
        if group.iter().any(|(e, _)| *e == row.emotion) {
            return Err(QuantInputError::DuplicateRow {
                domain: row.domain,
                emotion: row.emotion.as_str().to_string(),
            });
        }
        if let Some(symbol) = row.expected {
            expected.insert((row.domain.clone(), row.emotion.clone()), symbol);
        }
        group.push((row.emotion, row.values));
    }

    let mut tables = Vec::with_capacity(order.len());
    for domain in order {
        let rows = grouped.remove(&domain).unwrap_or_default();
        tables.push(QuantificationTable::from_percentages(domain, rows)?);
    }
    Ok(LoadedQuantification { tables, expected })
}

/// Reads `domain,emotion,no_fake_pct,fake_pct[,expected]` CSV.
pub fn read_quantification_csv<R: Read>(reader: R) -> Result<LoadedQuantification, QuantInputError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let required = |name: &str| column(name).ok_or_else(|| QuantInputError::MissingColumn(name.into()));

    let domain_col = required("domain")?;
    let emotion_col = required("emotion")?;
    let no_fake_col = required("no_fake_pct")?;
    let fake_col = required("fake_pct")?;
    let expected_col = column("expected");

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |col: usize| record.get(col).unwrap_or("").trim().to_string();

        let emotion_label = cell(emotion_col);
        let emotion = EmotionId::new(&emotion_label).map_err(|_| QuantInputError::BadEmotion {
            value: emotion_label.clone(),
            line,
        })?;
        let number = |col: usize| -> Result<f64, QuantInputError> {
            let text = cell(col);
            text.parse().map_err(|_| QuantInputError::BadNumber {
                value: text.clone(),
                line,
            })
        };
        let expected = match expected_col {
            Some(col) => {
                let text = cell(col);
                if text.is_empty() {
                    None
                } else {
                    Some(VariationSymbol::parse(&text).ok_or_else(|| {
                        QuantInputError::BadSymbol { value: text, line }
                    })?)
                }
            }
            None => None,
        };
        rows.push(PercentRow {
            domain: cell(domain_col),
            emotion,
            values: ClassPair::new(number(no_fake_col)?, number(fake_col)?),
            expected,
        });
    }
    assemble(rows)
}

/// Reads a rendered quantification JSON document, or an array of them.
pub fn read_quantification_json(text: &str) -> Result<LoadedQuantification, QuantInputError> {
    let documents: Vec<QuantificationJson> = match serde_json::from_str::<QuantificationJson>(text)
    {
        Ok(single) => vec![single],
        Err(_) => serde_json::from_str(text)?,
    };
    let mut rows = Vec::new();
    for document in &documents {
        for row in &document.rows {
            let emotion =
                EmotionId::new(&row.emotion).map_err(|_| QuantInputError::BadEmotion {
                    value: row.emotion.clone(),
                    line: 0,
                })?;
            let expected = row
                .expected
                .as_deref()
                .map(|text| {
                    VariationSymbol::parse(text).ok_or_else(|| QuantInputError::BadSymbol {
                        value: text.to_string(),
                        line: 0,
                    })
                })
                .transpose()?;
            rows.push(PercentRow {
                domain: document.domain.clone(),
                emotion,
                values: ClassPair::new(row.no_fake_pct, row.fake_pct),
                expected,
            });
        }
    }
    // When raw counts are present, rebuild the tables from them so the
    // percentages stay exactly E * 100 / W.
    if documents.len() == 1 && documents[0].word_counts.is_some() {
        let document = &documents[0];
        let words = document.word_counts.as_ref().expect("checked above");
        let mut count_rows = Vec::new();
        let mut complete = true;
        for row in &document.rows {
            match (row.no_fake_count, row.fake_count) {
                (Some(no_fake), Some(fake)) => {
                    let emotion =
                        EmotionId::new(&row.emotion).map_err(|_| QuantInputError::BadEmotion {
                            value: row.emotion.clone(),
                            line: 0,
                        })?;
                    count_rows.push((emotion, ClassPair::new(no_fake, fake)));
                }
                _ => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            let table = QuantificationTable::from_raw_counts(
                document.domain.clone(),
                count_rows,
                ClassPair::new(words.no_fake, words.fake),
            )?;
            let expected = assemble(rows)?.expected;
            return Ok(LoadedQuantification {
                tables: vec![table],
                expected,
            });
        }
    }
    assemble(rows)
}
