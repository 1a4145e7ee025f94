mod common;

use std::path::PathBuf;

use lexsim::context::{extract_contexts_for_term, find_occurrences, parse_pairs, read_pairs, window_text, TermSpec};
use lexsim::corpus::normalize::{match_key, tokens};
use lexsim::corpus::{load_corpus, read_manifest, CorpusStore, Language, ManifestEntry};
use lexsim::Error;

use common::fixtures;

fn store() -> CorpusStore {
    let dir = fixtures().join("corpus");
    load_corpus(&dir, &read_manifest(&dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn fixture_corpus_loads() {
    let s = store();
    let ids: Vec<_> = s.documents().iter().map(|d| d.id.as_str()).collect();
    assert_eq!(
        ids,
        [
            "cicero_tusculanae",
            "herodotus_historia",
            "homer_hymnos",
            "livius_historia",
            "plato_psyche",
            "vergilius_carmina"
        ]
    );
    let plato = s.document("plato_psyche").unwrap();
    assert_eq!(plato.language, Language::Greek);
    assert_eq!(plato.genre, "philosophy");
    let herodotus = s.document("herodotus_historia").unwrap();
    assert_eq!((herodotus.language, herodotus.author.as_str()), (Language::Greek, "Herodotus"));
    assert_eq!(s.document("cicero_tusculanae").unwrap().author, "M. Tullius Cicero");

    for d in s.documents() {
        for (i, sent) in d.sentences.iter().enumerate() {
            assert_eq!(sent.index, i);
            assert!(!sent.text.is_empty());
            assert_eq!(sent.text.trim(), sent.text);
        }
    }
}

#[test]
fn apparatus_and_notes_are_dropped() {
    let s = store();
    let all: String =
        s.documents().iter().flat_map(|d| d.sentences.iter().map(|x| x.text.as_str())).collect::<Vec<_>>().join("\n");
    for gone in ["Theaet. 151e", "δόξα", "cf. Acad"] {
        assert!(!all.contains(gone), "{gone:?} leaked into running text");
    }
}

#[test]
fn abbreviations_do_not_split() {
    let s = store();
    let cicero = s.document("cicero_tusculanae").unwrap();
    assert!(cicero.sentences.iter().any(|x| x.text == "Sic M. Tullius in Tusculanis disputat."));
    assert!(cicero.sentences.iter().any(|x| x.text == "Cn. Pompeius iustitiam laudabat."));
}

#[test]
fn greek_terminators_split() {
    let s = store();
    let plato = s.document("plato_psyche").unwrap();
    assert!(plato.sentences.iter().any(|x| x.text == "Πᾶσα γὰρ ψυχὴ ἀθάνατος·"));
    assert!(plato.sentences.iter().any(|x| x.text == "Τί οὖν ἐστιν ἐπιστήμη;"));
}

#[test]
fn serialization_is_deterministic_and_round_trips() {
    let a = store().to_json().unwrap();
    let b = store().to_json().unwrap();
    assert_eq!(a, b);
    let back = CorpusStore::from_json(&a).unwrap();
    assert_eq!(back.to_json().unwrap(), a);
    assert_eq!(back.index_len(), store().index_len());
}

#[test]
fn postings_are_sound_and_complete() {
    let s = store();
    for d in s.documents() {
        for sent in &d.sentences {
            for tok in tokens(&sent.text) {
                let key = match_key(tok);
                let postings = s.postings(d.language, &key);
                assert!(postings.contains(&(d.id.clone(), sent.index)), "{tok} in {}:{}", d.id, sent.index);
            }
        }
    }
    for key in ["ψυχη", "ψυχησ", "anima", "iustitiam"] {
        for lang in [Language::Greek, Language::Latin] {
            for (doc, idx) in s.postings(lang, key) {
                let doc = s.document(doc).unwrap();
                assert!(*idx < doc.sentences.len());
                assert_eq!(doc.language, lang);
            }
        }
    }
}

#[test]
fn occurrences_match_brute_force() {
    let s = store();
    let pairs = read_pairs(&fixtures().join("pairs.json")).unwrap();
    for pair in &pairs {
        for term in [&pair.greek, &pair.latin] {
            let keys = term.match_keys();
            let mut brute = Vec::new();
            for d in s.documents().iter().filter(|d| d.language == term.language) {
                for sent in &d.sentences {
                    if tokens(&sent.text).any(|t| keys.contains(&match_key(t))) {
                        brute.push((d.id.clone(), sent.index));
                    }
                }
            }
            brute.sort();
            let found = find_occurrences(&s, term);
            assert_eq!(found, brute, "{}", term.lemma);
            let windows = extract_contexts_for_term(&s, term, 2).unwrap();
            assert_eq!(windows.len(), found.len());
            for (w, (doc, idx)) in windows.iter().zip(&found) {
                assert_eq!((&w.document_id, w.center_index), (doc, *idx));
                assert_eq!(w.text, window_text(s.document(doc).unwrap(), *idx, 2).unwrap());
            }
        }
    }
}

#[test]
fn whole_token_matching_only() {
    let s = store();
    let anim = TermSpec::new("anim", Language::Latin, ["animu"]).unwrap();
    assert!(find_occurrences(&s, &anim).is_empty());
    let absent = TermSpec::new("φιλοσοφία", Language::Greek, Vec::<String>::new()).unwrap();
    assert!(find_occurrences(&s, &absent).is_empty());
    assert!(TermSpec::new("anima", Language::Greek, Vec::<String>::new()).is_err());
}

#[test]
fn load_errors() {
    let dir = fixtures().join("corpus");
    let missing =
        vec![ManifestEntry { path: PathBuf::from("nope.xml"), language: None, author: None, title: None, genre: None }];
    let err = load_corpus(&dir, &missing).unwrap_err();
    assert!(err.to_string().contains("nope.xml"), "{err}");

    let tmp = tempfile::tempdir().unwrap();
    std::fs::create_dir(tmp.path().join("a")).unwrap();
    std::fs::copy(dir.join("livius_historia.txt"), tmp.path().join("livius_historia.txt")).unwrap();
    std::fs::copy(dir.join("livius_historia.txt"), tmp.path().join("a/livius_historia.txt")).unwrap();
    let dup: Vec<ManifestEntry> = ["livius_historia.txt", "a/livius_historia.txt"]
        .iter()
        .map(|p| ManifestEntry {
            path: PathBuf::from(p),
            language: Some("la".into()),
            author: None,
            title: None,
            genre: None,
        })
        .collect();
    let err = load_corpus(tmp.path(), &dup).unwrap_err();
    assert!(matches!(err.root(), Error::DuplicateDocument(id) if id == "livius_historia"), "{err}");

    let no_lang = vec![ManifestEntry { language: None, ..dup[0].clone() }];
    let err = load_corpus(tmp.path(), &no_lang).unwrap_err();
    assert!(matches!(err.root(), Error::MissingLanguage(_)), "{err}");
}

#[test]
fn pair_file_validation() {
    assert!(parse_pairs("[]").unwrap().is_empty());
    assert!(parse_pairs(r#"[{"greek": {"lemma": "ψυχή"}}]"#).is_err());
    assert!(parse_pairs(r#"[{"greek": {"lemma": "anima"}, "latin": {"lemma": "anima"}, "class": "control"}]"#).is_err());
    let ok = parse_pairs(
        r#"[{"greek": {"lemma": "ψυχή", "forms": ["ψυχῆς", "ΨΥΧΉ", "ψυχή"]}, "latin": {"lemma": "anima"}, "class": "etymological"}]"#,
    )
    .unwrap();
    assert_eq!(ok[0].greek.match_keys().len(), 2);
}
