//! Parses a stock-layout association file: one line per (word, category)
//! pair with a 0/1 value, emotion rows interleaved with the two sentiment
//! rows that the emotion vocabulary does not cover.

use emovar_core::lexicon::{parse_lexicon, EmotionId, EmotionVocabulary, ParseOptions, SourceKind};

const SAMPLE: &str = include_str!("fixtures/nrc_sample.tsv");

fn emotion(label: &str) -> EmotionId {
    EmotionId::new(label).unwrap()
}

#[test]
fn binary_association_file_parses_cleanly() {
    let parsed = parse_lexicon(SAMPLE, &EmotionVocabulary::default(), ParseOptions::default())
        .expect("stock layout must parse");

    // 6 words x 8 emotion rows kept; the positive/negative rows are counted.
    assert_eq!(parsed.lexicon.word_count(), 6);
    assert_eq!(parsed.lexicon.entry_count(), 48);
    assert_eq!(parsed.skipped_out_of_vocabulary.get("positive"), Some(&6));
    assert_eq!(parsed.skipped_out_of_vocabulary.get("negative"), Some(&6));
    assert_eq!(parsed.skipped_total(), 12);

    // Binary file: every intensity is exactly 0 or 1.
    assert_eq!(parsed.lexicon.source_kind(), SourceKind::BinaryAssociation);
    for word in parsed.lexicon.words() {
        for (_, intensity) in parsed.lexicon.lookup(word) {
            assert!(*intensity == 0.0 || *intensity == 1.0);
        }
    }
}

#[test]
fn hand_read_lines_cross_check() {
    let parsed = parse_lexicon(SAMPLE, &EmotionVocabulary::default(), ParseOptions::default())
        .unwrap();
    let lexicon = &parsed.lexicon;
    let intensity = |word: &str, label: &str| -> f64 {
        lexicon
            .lookup(word)
            .iter()
            .find(|(e, _)| *e == emotion(label))
            .map(|(_, i)| *i)
            .unwrap_or_else(|| panic!("no ({word}, {label}) entry"))
    };

    // Ten lines read straight off the fixture.
    assert_eq!(intensity("abandon", "fear"), 1.0);
    assert_eq!(intensity("abandon", "joy"), 0.0);
    assert_eq!(intensity("abduction", "surprise"), 1.0);
    assert_eq!(intensity("cherish", "trust"), 1.0);
    assert_eq!(intensity("cherish", "fear"), 0.0);
    assert_eq!(intensity("grim", "disgust"), 1.0);
    assert_eq!(intensity("grim", "anticipation"), 0.0);
    assert_eq!(intensity("outbreak", "fear"), 1.0);
    assert_eq!(intensity("victory", "joy"), 1.0);
    assert_eq!(intensity("victory", "sadness"), 0.0);
}

#[test]
fn round_trip_preserves_the_kept_entries() {
    let parsed = parse_lexicon(SAMPLE, &EmotionVocabulary::default(), ParseOptions::default())
        .unwrap();
    let reparsed = parse_lexicon(
        &parsed.lexicon.to_tsv(),
        &EmotionVocabulary::default(),
        ParseOptions::default(),
    )
    .unwrap();
    assert_eq!(parsed.lexicon, reparsed.lexicon);
    assert_eq!(reparsed.skipped_total(), 0);
}
