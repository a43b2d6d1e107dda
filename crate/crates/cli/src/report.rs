//! Report rendering: quantification and characterization tables as text,
//! markdown, csv, or json.
//!
//! Rendering is pure and locale-independent — `.` decimal separator, `\n`
//! line endings — so equal inputs produce byte-identical output everywhere.
//! Rounding is display-only: csv and json always carry the full-precision
//! values next to the rounded display strings.

use serde::Serialize;

use emovar_core::pipeline::{CharacterizationRow, QuantificationTable, VariationSymbol};
use emovar_core::sensitivity::{mu_sensitivity, MuSensitivity};

use crate::wire::{
    ExpectedSymbols, QuantificationJson, QuantificationRowJson, WordCountsJson,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Markdown,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text.to_lowercase().as_str() {
            "text" | "txt" => Some(ReportFormat::Text),
            "markdown" | "md" => Some(ReportFormat::Markdown),
            "csv" => Some(ReportFormat::Csv),
            "json" => Some(ReportFormat::Json),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Text => "txt",
            ReportFormat::Markdown => "md",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

/// Rounds half-up (ties away from zero) to `decimals` places.
pub fn round_half_up(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let magnitude = (value.abs() * scale + 0.5).floor() / scale;
    if value < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Fixed-point display of a half-up rounded value.
pub fn format_fixed(value: f64, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, round_half_up(value, decimals))
}

pub fn format_percentage(value: f64, decimals: u32) -> String {
    format!("{}%", format_fixed(value, decimals))
}

fn display_emotion(label: &str) -> String {
    let mut chars = label.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

fn pad_left(text: &str, width: usize) -> String {
    format!("{:>width$}", text, width = width)
}

fn pad_right(text: &str, width: usize) -> String {
    format!("{:<width$}", text, width = width)
}

fn width_of<'a>(header: &str, cells: impl Iterator<Item = &'a str>) -> usize {
    cells
        .map(|c| c.chars().count())
        .chain(std::iter::once(header.chars().count()))
        .max()
        .unwrap_or(0)
}

/// Renders one quantification table.
///
/// Text and markdown show one row per emotion with rounded percentages for
/// the noFake and Fake columns; csv and json add the full-precision values,
/// and json also carries the raw `E` and `W` counts when the table was
/// computed from a corpus.
pub fn render_quantification(
    table: &QuantificationTable,
    format: ReportFormat,
    decimals: u32,
) -> String {
    match format {
        ReportFormat::Text => quantification_text(table, decimals),
        ReportFormat::Markdown => quantification_markdown(table, decimals),
        ReportFormat::Csv => quantification_csv(table, decimals),
        ReportFormat::Json => quantification_json_text(table, decimals),
    }
}

struct QuantRow {
    name: String,
    no_fake: String,
    fake: String,
}

fn quantification_rows(table: &QuantificationTable, decimals: u32) -> Vec<QuantRow> {
    table
        .emotions()
        .iter()
        .map(|emotion| {
            let pair = table
                .percentages(emotion)
                .expect("table emotions always have rows");
            QuantRow {
                name: display_emotion(emotion.as_str()),
                no_fake: format_percentage(pair.no_fake, decimals),
                fake: format_percentage(pair.fake, decimals),
            }
        })
        .collect()
}

fn degenerate_note(table: &QuantificationTable) -> Option<String> {
    if table.degenerate_classes().is_empty() {
        None
    } else {
        let classes: Vec<&str> = table
            .degenerate_classes()
            .iter()
            .map(|c| c.label())
            .collect();
        Some(format!(
            "warning: class {} has zero words; affected percentages are 0",
            classes.join(", ")
        ))
    }
}

fn quantification_text(table: &QuantificationTable, decimals: u32) -> String {
    let rows = quantification_rows(table, decimals);
    let name_w = width_of("Emotion", rows.iter().map(|r| r.name.as_str()));
    let no_fake_w = width_of("noFake", rows.iter().map(|r| r.no_fake.as_str()));
    let fake_w = width_of("Fake", rows.iter().map(|r| r.fake.as_str()));

    let mut out = format!("Domain: {}\n\n", table.domain());
    out.push_str(&format!(
        "{}  {}  {}\n",
        pad_right("Emotion", name_w),
        pad_left("noFake", no_fake_w),
        pad_left("Fake", fake_w)
    ));
    for row in &rows {
        out.push_str(&format!(
            "{}  {}  {}\n",
            pad_right(&row.name, name_w),
            pad_left(&row.no_fake, no_fake_w),
            pad_left(&row.fake, fake_w)
        ));
    }
    if let Some(counts) = table.counts() {
        out.push_str(&format!(
            "\nWords after preprocessing: noFake {}, Fake {}\n",
            counts.word_counts.no_fake, counts.word_counts.fake
        ));
    }
    if let Some(note) = degenerate_note(table) {
        out.push_str(&note);
        out.push('\n');
    }
    out
}

fn quantification_markdown(table: &QuantificationTable, decimals: u32) -> String {
    let mut out = String::from("| Emotion | noFake | Fake |\n| --- | --- | --- |\n");
    for emotion in table.emotions() {
        let pair = table
            .percentages(emotion)
            .expect("table emotions always have rows");
        let no_fake = format_percentage(pair.no_fake, decimals);
        let fake = format_percentage(pair.fake, decimals);
        // Bold marks the class where the emotion is more frequent; ties stay
        // plain.
        let (no_fake, fake) = if pair.no_fake > pair.fake {
            (format!("**{no_fake}**"), fake)
        } else if pair.fake > pair.no_fake {
            (no_fake, format!("**{fake}**"))
        } else {
            (no_fake, fake)
        };
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            display_emotion(emotion.as_str()),
            no_fake,
            fake
        ));
    }
    if let Some(note) = degenerate_note(table) {
        out.push_str(&format!("\n_{note}_\n"));
    }
    out
}

fn quantification_csv(table: &QuantificationTable, decimals: u32) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "domain",
            "emotion",
            "no_fake_pct",
            "fake_pct",
            "no_fake_display",
            "fake_display",
        ])
        .expect("writing to memory");
    for emotion in table.emotions() {
        let pair = table
            .percentages(emotion)
            .expect("table emotions always have rows");
        writer
            .write_record([
                table.domain(),
                emotion.as_str(),
                &pair.no_fake.to_string(),
                &pair.fake.to_string(),
                &format_percentage(pair.no_fake, decimals),
                &format_percentage(pair.fake, decimals),
            ])
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("csv is utf-8")
}

/// The json document for a table; shared with the quantification loader.
pub fn quantification_json(table: &QuantificationTable, decimals: u32) -> QuantificationJson {
    let counts = table.counts();
    QuantificationJson {
        domain: table.domain().to_string(),
        rows: table
            .emotions()
            .iter()
            .map(|emotion| {
                let pair = table
                    .percentages(emotion)
                    .expect("table emotions always have rows");
                let tally = counts.map(|c| {
                    c.emotion_counts
                        .get(emotion)
                        .copied()
                        .unwrap_or_default()
                });
                QuantificationRowJson {
                    emotion: emotion.as_str().to_string(),
                    no_fake_pct: pair.no_fake,
                    fake_pct: pair.fake,
                    no_fake_display: Some(format_percentage(pair.no_fake, decimals)),
                    fake_display: Some(format_percentage(pair.fake, decimals)),
                    no_fake_count: tally.map(|t| t.no_fake),
                    fake_count: tally.map(|t| t.fake),
                    expected: None,
                }
            })
            .collect(),
        word_counts: counts.map(|c| WordCountsJson {
            no_fake: c.word_counts.no_fake,
            fake: c.word_counts.fake,
        }),
        degenerate_classes: table
            .degenerate_classes()
            .iter()
            .map(|c| c.label().to_string())
            .collect(),
    }
}

fn quantification_json_text(table: &QuantificationTable, decimals: u32) -> String {
    let mut out = serde_json::to_string_pretty(&quantification_json(table, decimals))
        .expect("serialization of plain data cannot fail");
    out.push('\n');
    out
}

/// Characterization rows grouped by domain.
pub type DomainRows = (String, Vec<CharacterizationRow>);

fn symbol_text(symbol: VariationSymbol, ascii: bool) -> &'static str {
    if ascii {
        symbol.ascii()
    } else {
        symbol.glyph()
    }
}

fn emotion_union(domains: &[DomainRows]) -> Vec<emovar_core::lexicon::EmotionId> {
    let mut order = Vec::new();
    for (_, rows) in domains {
        for row in rows {
            if !order.contains(&row.emotion) {
                order.push(row.emotion.clone());
            }
        }
    }
    order
}

fn sensitivity_of(domains: &[DomainRows]) -> MuSensitivity {
    let borrowed: Vec<(&str, &[CharacterizationRow])> = domains
        .iter()
        .map(|(domain, rows)| (domain.as_str(), rows.as_slice()))
        .collect();
    mu_sensitivity(&borrowed)
}

fn sensitivity_footnote(sensitivity: &MuSensitivity) -> String {
    let upper = sensitivity
        .upper
        .map_or_else(|| "inf".to_string(), |u| format!("{u:.4}"));
    let mut out = if sensitivity.lower > 0.0 {
        format!(
            "mu feasible interval: [{:.4}, {upper}) — symbols are unchanged for any mu in it\n",
            sensitivity.lower
        )
    } else {
        format!("mu feasible interval: (0, {upper}) — symbols are unchanged for any mu in it\n")
    };
    let cells = |cells: &[emovar_core::sensitivity::BindingCell]| {
        cells
            .iter()
            .map(|c| format!("{}/{} (V = {:.4})", c.domain, c.emotion, c.variation))
            .collect::<Vec<_>>()
            .join(", ")
    };
    if !sensitivity.binding_upper.is_empty() {
        out.push_str(&format!(
            "  upper bound set by: {}\n",
            cells(&sensitivity.binding_upper)
        ));
    }
    if !sensitivity.binding_lower.is_empty() {
        out.push_str(&format!(
            "  lower bound set by: {}\n",
            cells(&sensitivity.binding_lower)
        ));
    }
    out
}

/// One cell where the computed symbol disagrees with the expected one.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub domain: String,
    pub emotion: emovar_core::lexicon::EmotionId,
    pub computed: VariationSymbol,
    pub expected: VariationSymbol,
}

/// Comparison of computed symbols against expected ones.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    /// Number of cells that had an expected symbol.
    pub compared: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl DiscrepancyReport {
    pub fn matching(&self) -> usize {
        self.compared - self.discrepancies.len()
    }
}

pub fn compare_with_expected(
    domains: &[DomainRows],
    expected: &ExpectedSymbols,
) -> DiscrepancyReport {
    let mut compared = 0;
    let mut discrepancies = Vec::new();
    for (domain, rows) in domains {
        for row in rows {
            if let Some(&symbol) = expected.get(&(domain.clone(), row.emotion.clone())) {
                compared += 1;
                if symbol != row.symbol {
                    discrepancies.push(Discrepancy {
                        domain: domain.clone(),
                        emotion: row.emotion.clone(),
                        computed: row.symbol,
                        expected: symbol,
                    });
                }
            }
        }
    }
    DiscrepancyReport {
        compared,
        discrepancies,
    }
}

fn discrepancy_text(report: &DiscrepancyReport) -> String {
    let mut out = format!(
        "discrepancies vs expected symbols: {} of {} cells differ\n",
        report.discrepancies.len(),
        report.compared
    );
    for d in &report.discrepancies {
        out.push_str(&format!(
            "  {}/{}: computed {}, expected {}\n",
            d.domain,
            d.emotion,
            d.computed.ascii(),
            d.expected.ascii()
        ));
    }
    out
}

#[derive(Serialize)]
struct CharacterizationJson<'a> {
    domains: Vec<CharacterizationDomainJson<'a>>,
    mu_sensitivity: MuSensitivityJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancies: Option<Vec<DiscrepancyJson>>,
}

#[derive(Serialize)]
struct CharacterizationDomainJson<'a> {
    domain: &'a str,
    rows: Vec<CharacterizationRowJson<'a>>,
}

#[derive(Serialize)]
struct CharacterizationRowJson<'a> {
    emotion: &'a str,
    variation: f64,
    symbol: &'static str,
}

#[derive(Serialize)]
struct MuSensitivityJson {
    lower: f64,
    upper: Option<f64>,
    binding_lower: Vec<BindingCellJson>,
    binding_upper: Vec<BindingCellJson>,
}

#[derive(Serialize)]
struct BindingCellJson {
    domain: String,
    emotion: String,
    variation: f64,
}

#[derive(Serialize)]
struct DiscrepancyJson {
    domain: String,
    emotion: String,
    computed: &'static str,
    expected: &'static str,
}

/// Renders characterization rows, one symbol column per domain.
///
/// Text output appends the feasible-margin footnote; json additionally
/// carries the numeric variation per row and the sensitivity bounds. With
/// `ascii`, symbols render as `up`/`down`/`eq` instead of the glyphs.
pub fn render_characterization(domains: &[DomainRows], format: ReportFormat, ascii: bool) -> String {
    render_characterization_report(domains, format, ascii, None)
}

/// Like [`render_characterization`], additionally comparing against expected
/// symbols and reporting every cell that differs.
pub fn render_characterization_report(
    domains: &[DomainRows],
    format: ReportFormat,
    ascii: bool,
    expected: Option<&ExpectedSymbols>,
) -> String {
    let report = expected.map(|e| compare_with_expected(domains, e));
    match format {
        ReportFormat::Text => characterization_text(domains, ascii, report.as_ref()),
        ReportFormat::Markdown => characterization_markdown(domains, ascii, report.as_ref()),
        ReportFormat::Csv => characterization_csv(domains, ascii, expected),
        ReportFormat::Json => characterization_json(domains, report.as_ref()),
    }
}

fn characterization_text(
    domains: &[DomainRows],
    ascii: bool,
    report: Option<&DiscrepancyReport>,
) -> String {
    let emotions = emotion_union(domains);
    let names: Vec<String> = emotions.iter().map(|e| display_emotion(e.as_str())).collect();
    let name_w = width_of("Emotion", names.iter().map(String::as_str));

    let mut columns: Vec<(String, Vec<String>)> = Vec::new();
    for (domain, rows) in domains {
        let cells: Vec<String> = emotions
            .iter()
            .map(|emotion| {
                rows.iter()
                    .find(|r| r.emotion == *emotion)
                    .map_or_else(|| "-".to_string(), |r| symbol_text(r.symbol, ascii).to_string())
            })
            .collect();
        columns.push((domain.clone(), cells));
    }

    let widths: Vec<usize> = columns
        .iter()
        .map(|(domain, cells)| width_of(domain, cells.iter().map(String::as_str)))
        .collect();

    let mut out = pad_right("Emotion", name_w);
    for ((domain, _), width) in columns.iter().zip(&widths) {
        out.push_str("  ");
        out.push_str(&pad_left(domain, *width));
    }
    out.push('\n');
    for (index, name) in names.iter().enumerate() {
        out.push_str(&pad_right(name, name_w));
        for ((_, cells), width) in columns.iter().zip(&widths) {
            out.push_str("  ");
            out.push_str(&pad_left(&cells[index], *width));
        }
        out.push('\n');
    }

    out.push('\n');
    out.push_str(&sensitivity_footnote(&sensitivity_of(domains)));
    if let Some(report) = report {
        out.push('\n');
        out.push_str(&discrepancy_text(report));
    }
    out
}

fn characterization_markdown(
    domains: &[DomainRows],
    ascii: bool,
    report: Option<&DiscrepancyReport>,
) -> String {
    let emotions = emotion_union(domains);
    let mut out = String::from("| Emotion |");
    for (domain, _) in domains {
        out.push_str(&format!(" {domain} |"));
    }
    out.push_str("\n| --- |");
    for _ in domains {
        out.push_str(" --- |");
    }
    out.push('\n');
    for emotion in &emotions {
        out.push_str(&format!("| {} |", display_emotion(emotion.as_str())));
        for (_, rows) in domains {
            let cell = rows
                .iter()
                .find(|r| r.emotion == *emotion)
                .map_or("-", |r| symbol_text(r.symbol, ascii));
            out.push_str(&format!(" {cell} |"));
        }
        out.push('\n');
    }
    if let Some(report) = report {
        out.push('\n');
        out.push_str(&discrepancy_text(report));
    }
    out
}

fn characterization_csv(
    domains: &[DomainRows],
    ascii: bool,
    expected: Option<&ExpectedSymbols>,
) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["domain", "emotion", "variation", "symbol"];
    if expected.is_some() {
        header.push("expected");
        header.push("match");
    }
    writer.write_record(&header).expect("writing to memory");
    for (domain, rows) in domains {
        for row in rows {
            let mut record = vec![
                domain.clone(),
                row.emotion.as_str().to_string(),
                row.variation.to_string(),
                symbol_text(row.symbol, ascii).to_string(),
            ];
            if let Some(expected) = expected {
                match expected.get(&(domain.clone(), row.emotion.clone())) {
                    Some(&symbol) => {
                        record.push(symbol_text(symbol, ascii).to_string());
                        record.push((symbol == row.symbol).to_string());
                    }
                    None => {
                        record.push(String::new());
                        record.push(String::new());
                    }
                }
            }
            writer.write_record(&record).expect("writing to memory");
        }
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("csv is utf-8")
}

fn characterization_json(domains: &[DomainRows], report: Option<&DiscrepancyReport>) -> String {
    let sensitivity = sensitivity_of(domains);
    let cells = |cells: &[emovar_core::sensitivity::BindingCell]| {
        cells
            .iter()
            .map(|c| BindingCellJson {
                domain: c.domain.clone(),
                emotion: c.emotion.as_str().to_string(),
                variation: c.variation,
            })
            .collect()
    };
    let document = CharacterizationJson {
        domains: domains
            .iter()
            .map(|(domain, rows)| CharacterizationDomainJson {
                domain,
                rows: rows
                    .iter()
                    .map(|row| CharacterizationRowJson {
                        emotion: row.emotion.as_str(),
                        variation: row.variation,
                        symbol: row.symbol.ascii(),
                    })
                    .collect(),
            })
            .collect(),
        mu_sensitivity: MuSensitivityJson {
            lower: sensitivity.lower,
            upper: sensitivity.upper,
            binding_lower: cells(&sensitivity.binding_lower),
            binding_upper: cells(&sensitivity.binding_upper),
        },
        discrepancies: report.map(|r| {
            r.discrepancies
                .iter()
                .map(|d| DiscrepancyJson {
                    domain: d.domain.clone(),
                    emotion: d.emotion.as_str().to_string(),
                    computed: d.computed.ascii(),
                    expected: d.expected.ascii(),
                })
                .collect()
        }),
    };
    let mut out =
        serde_json::to_string_pretty(&document).expect("serialization of plain data cannot fail");
    out.push('\n');
    out
}
