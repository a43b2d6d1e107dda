//! Property suites for the per-module contracts: canonical lexicon ordering,
//! preprocessing invariants, and dedup behavior.

use proptest::prelude::*;

use emovar_core::corpus::{dedup_corpus, Corpus, Publication, PublicationClass};
use emovar_core::lexicon::{parse_lexicon, EmotionVocabulary, ParseOptions, DEFAULT_EMOTION_LABELS};
use emovar_core::preprocess::{
    normalize, remove_stopwords, strip_urls, tokenize, Preprocessor, StopwordList,
};

fn parse(tsv: &str) -> emovar_core::lexicon::Lexicon {
    parse_lexicon(tsv, &EmotionVocabulary::default(), ParseOptions::default())
        .unwrap()
        .lexicon
}

fn lexicon_lines() -> impl Strategy<Value = Vec<(String, String, f64)>> {
    let word = prop::sample::select(vec![
        "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    ]);
    let emotion = prop::sample::select(DEFAULT_EMOTION_LABELS.to_vec());
    let intensity = prop::sample::select(vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    prop::collection::btree_map((word, emotion), intensity, 0..24).prop_map(|map| {
        map.into_iter()
            .map(|((word, emotion), intensity)| {
                (word.to_string(), emotion.to_string(), intensity)
            })
            .collect()
    })
}

fn to_tsv(lines: &[(String, String, f64)]) -> String {
    lines
        .iter()
        .map(|(word, emotion, intensity)| format!("{word}\t{emotion}\t{intensity}\n"))
        .collect()
}

proptest! {
    #[test]
    fn lookup_is_independent_of_line_order(lines in lexicon_lines(), seed in any::<u64>()) {
        let lexicon = parse(&to_tsv(&lines));

        // Deterministic shuffle driven by the seed.
        let mut shuffled = lines.clone();
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let reshuffled = parse(&to_tsv(&shuffled));
        prop_assert_eq!(&lexicon, &reshuffled);

        for (word, _, _) in &lines {
            let labels: Vec<&str> = lexicon.lookup(word).iter().map(|(e, _)| e.as_str()).collect();
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            prop_assert_eq!(labels, sorted);
        }
    }

    #[test]
    fn serialization_round_trips(lines in lexicon_lines()) {
        let lexicon = parse(&to_tsv(&lines));
        let reparsed = parse(&lexicon.to_tsv());
        prop_assert_eq!(lexicon, reparsed);
    }

    #[test]
    fn stripped_text_has_no_url_schemes(
        chunks in prop::collection::vec(
            prop_oneof![
                "[a-zA-Z0-9 .,:!#@']{0,12}",
                Just("https://t.co/Ab1".to_string()),
                Just("http://example.com/x?q=1".to_string()),
                Just("www.example.org/path".to_string()),
                Just("HTTPS://UP.CASE".to_string()),
                Just("xhttp://embedded".to_string()),
            ],
            0..8,
        )
    ) {
        let text = chunks.join(" ");
        let stripped = strip_urls(&text);
        let lowered = stripped.to_lowercase();
        prop_assert!(!lowered.contains("http://"));
        prop_assert!(!lowered.contains("https://"));
        // normalize composes the same strip, so it holds there too.
        let normalized = normalize(&text);
        prop_assert!(!normalized.contains("http://"));
        prop_assert!(!normalized.contains("https://"));
    }

    #[test]
    fn normalize_is_idempotent(text in "\\PC{0,200}") {
        let once = normalize(&text);
        prop_assert_eq!(normalize(&once), once.clone());
    }

    #[test]
    fn tokens_contain_no_separators(text in "\\PC{0,200}") {
        for token in tokenize(&normalize(&text)) {
            prop_assert!(!token.is_empty());
            prop_assert!(token
                .chars()
                .all(|c| c.is_alphabetic() || c.is_numeric() || c == '\''));
        }
    }

    #[test]
    fn tokens_are_substrings_of_the_normalized_text(text in "\\PC{0,200}") {
        let normalized = normalize(&text);
        for token in tokenize(&normalized) {
            prop_assert!(normalized.contains(&token));
        }
    }

    #[test]
    fn stopword_removal_counts_add_up(
        words in prop::collection::vec(
            prop::sample::select(vec!["the", "a", "grim", "truth", "of", "calm"]),
            0..40,
        )
    ) {
        let stops = StopwordList::from_words(["the", "a", "of"]).unwrap();
        let tokens: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let stop_occurrences = tokens.iter().filter(|w| stops.contains(w)).count();
        let kept = remove_stopwords(tokens.clone(), &stops);
        prop_assert_eq!(kept.len(), tokens.len() - stop_occurrences);
        prop_assert!(kept.iter().all(|w| !stops.contains(w)));
    }

    #[test]
    fn preprocessing_is_idempotent_at_the_text_level(text in "\\PC{0,200}") {
        let preprocessor = Preprocessor::new(StopwordList::from_words(["the", "of"]).unwrap());
        let tokens = preprocessor.tokens(&text);
        let again = preprocessor.tokens(&tokens.join(" "));
        prop_assert_eq!(tokens, again);
    }

    #[test]
    fn dedup_matches_a_set_oracle(
        texts in prop::collection::vec(
            prop_oneof![
                "[a-zA-Z ]{1,20}",
                Just("planted duplicate".to_string()),
                Just("PLANTED  DUPLICATE".to_string()),
            ],
            1..30,
        )
    ) {
        let publications: Vec<Publication> = texts
            .iter()
            .enumerate()
            .filter(|(_, text)| !text.trim().is_empty())
            .map(|(index, text)| Publication {
                id: format!("p{index}"),
                text: text.clone(),
                class: PublicationClass::Fake,
                domain: "d".into(),
            })
            .collect();
        prop_assume!(!publications.is_empty());
        let distinct: std::collections::BTreeSet<String> =
            publications.iter().map(|p| normalize(&p.text)).collect();

        let corpus = Corpus::new("d", publications).unwrap();
        let deduped = dedup_corpus(corpus, normalize);
        prop_assert_eq!(deduped.corpus.len(), distinct.len());

        let again = dedup_corpus(deduped.corpus.clone(), normalize);
        prop_assert_eq!(again.corpus, deduped.corpus);
        prop_assert_eq!(again.removed, 0);
    }
}
