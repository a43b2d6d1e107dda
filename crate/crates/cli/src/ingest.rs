//! Corpus ingestion from CSV and JSONL files.
//!
//! Rows are mapped onto [`Publication`]s through a field map (which columns
//! or keys hold id, text, and label) and a label map (which label strings
//! mean fake or nofake, case-insensitively). Rows with empty text are
//! dropped and counted. Publications are grouped into one corpus per domain,
//! in order of first appearance, preserving row order within each.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};

use serde_json::Value;
use thiserror::Error;

use emovar_core::corpus::{Corpus, CorpusError, Publication, PublicationClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl CorpusFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text.to_lowercase().as_str() {
            "csv" => Some(CorpusFormat::Csv),
            "jsonl" | "ndjson" => Some(CorpusFormat::Jsonl),
            _ => None,
        }
    }
}

/// Which columns (CSV) or keys (JSONL) hold each publication field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMap {
    pub id: String,
    pub text: String,
    pub label: String,
    pub domain: Option<String>,
}

impl Default for FieldMap {
    fn default() -> Self {
        Self {
            id: "id".into(),
            text: "text".into(),
            label: "label".into(),
            domain: None,
        }
    }
}

/// Case-insensitive mapping from label strings to publication classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    map: BTreeMap<String, PublicationClass>,
}

impl LabelMap {
    pub fn empty() -> Self {
        Self {
            map: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, label: &str, class: PublicationClass) {
        self.map.insert(label.trim().to_lowercase(), class);
    }

    pub fn resolve(&self, label: &str) -> Option<PublicationClass> {
        self.map.get(&label.trim().to_lowercase()).copied()
    }

    /// Parses flag syntax: `fake=Fake,real=NoFake`.
    pub fn parse_flag(spec: &str) -> Result<Self, IngestError> {
        let mut map = Self::empty();
        for entry in spec.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (label, class) = entry
                .split_once('=')
                .ok_or_else(|| IngestError::BadLabelMapEntry(entry.to_string()))?;
            let class = PublicationClass::parse(class.trim())
                .ok_or_else(|| IngestError::BadLabelMapClass(class.trim().to_string()))?;
            map.insert(label, class);
        }
        Ok(map)
    }
}

/// Canonical labels: `fake` and `nofake`.
impl Default for LabelMap {
    fn default() -> Self {
        let mut map = Self::empty();
        map.insert("fake", PublicationClass::Fake);
        map.insert("nofake", PublicationClass::NoFake);
        map
    }
}

/// Ingested corpora (one per domain, in first-appearance order) plus the
/// number of rows dropped for having empty text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestOutcome {
    pub corpora: Vec<Corpus>,
    pub dropped_empty_text: usize,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: invalid json: {source}")]
    Json {
        line: u64,
        source: serde_json::Error,
    },
    #[error("line {line}: expected a json object")]
    NotAnObject { line: u64 },
    #[error("missing field `{field}` (line {line})")]
    MissingField { field: String, line: u64 },
    #[error("field `{field}` has an unsupported type (line {line})")]
    BadFieldType { field: String, line: u64 },
    #[error("unmapped label value `{value}` (line {line})")]
    UnmappedLabel { value: String, line: u64 },
    #[error("empty id (line {line})")]
    EmptyId { line: u64 },
    #[error("duplicate publication id `{id}` in domain `{domain}` (line {line})")]
    DuplicateId {
        id: String,
        domain: String,
        line: u64,
    },
    #[error("bad label-map entry `{0}`, expected label=Fake|NoFake")]
    BadLabelMapEntry(String),
    #[error("bad label-map class `{0}`, expected Fake or NoFake")]
    BadLabelMapClass(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

struct RawRow {
    id: String,
    text: String,
    label: String,
    domain: Option<String>,
    line: u64,
}

/// Reads a labeled corpus, preserving input order.
pub fn ingest<R: Read>(
    reader: R,
    format: CorpusFormat,
    fields: &FieldMap,
    labels: &LabelMap,
    default_domain: &str,
) -> Result<IngestOutcome, IngestError> {
    let rows = match format {
        CorpusFormat::Csv => read_csv_rows(reader, fields)?,
        CorpusFormat::Jsonl => read_jsonl_rows(reader, fields)?,
    };
    collect_rows(rows, labels, default_domain)
}

fn collect_rows(
    rows: Vec<RawRow>,
    labels: &LabelMap,
    default_domain: &str,
) -> Result<IngestOutcome, IngestError> {
    let mut dropped = 0usize;
    // Domain → (first-appearance index, publications, seen ids).
    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, Vec<Publication>> = BTreeMap::new();
    let mut seen_ids: BTreeMap<String, std::collections::BTreeSet<String>> = BTreeMap::new();

    for row in rows {
        if row.text.trim().is_empty() {
            dropped += 1;
            continue;
        }
        let class = labels
            .resolve(&row.label)
            .ok_or_else(|| IngestError::UnmappedLabel {
                value: row.label.clone(),
                line: row.line,
            })?;
        if row.id.is_empty() {
            return Err(IngestError::EmptyId { line: row.line });
        }
        let domain = row.domain.unwrap_or_else(|| default_domain.to_string());
        if !groups.contains_key(&domain) {
            order.push(domain.clone());
        }
        if !seen_ids.entry(domain.clone()).or_default().insert(row.id.clone()) {
            return Err(IngestError::DuplicateId {
                id: row.id,
                domain,
                line: row.line,
            });
        }
        groups.entry(domain.clone()).or_default().push(Publication {
            id: row.id,
            text: row.text,
            class,
            domain,
        });
    }

    let mut corpora = Vec::with_capacity(order.len());
    for domain in order {
        let publications = groups.remove(&domain).unwrap_or_default();
        corpora.push(Corpus::new(domain, publications)?);
    }
    Ok(IngestOutcome {
        corpora,
        dropped_empty_text: dropped,
    })
}

fn read_csv_rows<R: Read>(reader: R, fields: &FieldMap) -> Result<Vec<RawRow>, IngestError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = reader.headers()?.clone();
    let column = |name: &str| -> Result<usize, IngestError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingField {
                field: name.to_string(),
                line: 1,
            })
    };
    let id_col = column(&fields.id)?;
    let text_col = column(&fields.text)?;
    let label_col = column(&fields.label)?;
    let domain_col = fields.domain.as_deref().map(column).transpose()?;

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let get = |col: usize, field: &str| -> Result<String, IngestError> {
            record
                .get(col)
                .map(str::to_string)
                .ok_or_else(|| IngestError::MissingField {
                    field: field.to_string(),
                    line,
                })
        };
        rows.push(RawRow {
            id: get(id_col, &fields.id)?,
            text: get(text_col, &fields.text)?,
            label: get(label_col, &fields.label)?,
            domain: match domain_col {
                Some(col) => Some(get(col, fields.domain.as_deref().unwrap_or("domain"))?),
                None => None,
            },
            line,
        });
    }
    Ok(rows)
}

fn read_jsonl_rows<R: Read>(reader: R, fields: &FieldMap) -> Result<Vec<RawRow>, IngestError> {
    let mut rows = Vec::new();
    for (index, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = index as u64 + 1;
        let line = line.map_err(|e| IngestError::Json {
            line: line_no,
            source: serde_json::Error::io(e),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).map_err(|e| IngestError::Json {
            line: line_no,
            source: e,
        })?;
        let object = value
            .as_object()
            .ok_or(IngestError::NotAnObject { line: line_no })?;

        let field = |name: &str| -> Result<String, IngestError> {
            let value = object.get(name).ok_or_else(|| IngestError::MissingField {
                field: name.to_string(),
                line: line_no,
            })?;
            match value {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(IngestError::BadFieldType {
                    field: name.to_string(),
                    line: line_no,
                }),
            }
        };

        rows.push(RawRow {
            id: field(&fields.id)?,
            text: field(&fields.text)?,
            label: field(&fields.label)?,
            domain: fields.domain.as_deref().map(field).transpose()?,
            line: line_no,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_maps() -> (FieldMap, LabelMap) {
        let mut labels = LabelMap::default();
        labels.insert("real", PublicationClass::NoFake);
        (FieldMap::default(), labels)
    }

    #[test]
    fn csv_two_rows() {
        let (fields, labels) = default_maps();
        let data = "id,text,label\n1,a b,fake\n2,c d,real\n";
        let outcome = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "politics")
            .unwrap();
        assert_eq!(outcome.corpora.len(), 1);
        let corpus = &outcome.corpora[0];
        assert_eq!(corpus.domain(), "politics");
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.publications()[0].class, PublicationClass::Fake);
        assert_eq!(corpus.publications()[1].class, PublicationClass::NoFake);
        assert_eq!(outcome.dropped_empty_text, 0);
    }

    #[test]
    fn unmapped_label_names_value_and_line() {
        let (fields, labels) = default_maps();
        let data = "id,text,label\n1,a,fake\n2,b,unknown\n";
        let err = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "d").unwrap_err();
        match err {
            IngestError::UnmappedLabel { value, line } => {
                assert_eq!(value, "unknown");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn missing_mapped_field_is_an_error() {
        let (_, labels) = default_maps();
        let fields = FieldMap {
            text: "body".into(),
            ..FieldMap::default()
        };
        let data = "id,text,label\n1,a,fake\n";
        let err = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "d").unwrap_err();
        assert!(matches!(err, IngestError::MissingField { ref field, .. } if field == "body"));
    }

    #[test]
    fn empty_text_rows_are_dropped_and_counted() {
        let (fields, labels) = default_maps();
        let data = "id,text,label\n1,a,fake\n2,,fake\n3,  ,fake\n";
        let outcome = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "d").unwrap();
        assert_eq!(outcome.corpora[0].len(), 1);
        assert_eq!(outcome.dropped_empty_text, 2);
    }

    #[test]
    fn labels_resolve_case_insensitively() {
        let (fields, labels) = default_maps();
        let data = "id,text,label\n1,a,FAKE\n2,b,Real\n";
        let outcome = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "d").unwrap();
        assert_eq!(outcome.corpora[0].publications()[0].class, PublicationClass::Fake);
        assert_eq!(outcome.corpora[0].publications()[1].class, PublicationClass::NoFake);
    }

    #[test]
    fn duplicate_ids_within_a_domain_are_rejected() {
        let (fields, labels) = default_maps();
        let data = "id,text,label\n1,a,fake\n1,b,fake\n";
        let err = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "d").unwrap_err();
        assert!(matches!(err, IngestError::DuplicateId { .. }));
    }

    #[test]
    fn jsonl_with_numeric_ids() {
        let (fields, labels) = default_maps();
        let data = "{\"id\":1,\"text\":\"a\",\"label\":\"fake\"}\n\n{\"id\":2,\"text\":\"b\",\"label\":\"real\"}\n";
        let outcome = ingest(data.as_bytes(), CorpusFormat::Jsonl, &fields, &labels, "d").unwrap();
        assert_eq!(outcome.corpora[0].publications()[0].id, "1");
        assert_eq!(outcome.corpora[0].len(), 2);
    }

    #[test]
    fn domain_field_groups_rows_in_first_appearance_order() {
        let (_, labels) = default_maps();
        let fields = FieldMap {
            domain: Some("dom".into()),
            ..FieldMap::default()
        };
        let data = "id,text,label,dom\n1,a,fake,x\n2,b,fake,y\n3,c,real,x\n";
        let outcome = ingest(data.as_bytes(), CorpusFormat::Csv, &fields, &labels, "ignored")
            .unwrap();
        assert_eq!(outcome.corpora.len(), 2);
        assert_eq!(outcome.corpora[0].domain(), "x");
        assert_eq!(outcome.corpora[0].len(), 2);
        assert_eq!(outcome.corpora[1].domain(), "y");
        assert_eq!(outcome.corpora[1].len(), 1);
    }

    #[test]
    fn label_map_flag_syntax() {
        let map = LabelMap::parse_flag("fake=Fake,real=NoFake").unwrap();
        assert_eq!(map.resolve("REAL"), Some(PublicationClass::NoFake));
        assert_eq!(map.resolve("fake"), Some(PublicationClass::Fake));
        assert!(LabelMap::parse_flag("oops").is_err());
        assert!(LabelMap::parse_flag("x=maybe").is_err());
    }
}
