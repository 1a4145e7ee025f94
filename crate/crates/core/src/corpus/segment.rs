//! Rule-based sentence segmentation for Greek and Latin.
//!
//! A boundary falls after a run of terminators (plus any closing quotes or
//! brackets) that is followed by whitespace or the end of the text. A
//! period closing an abbreviation is not a boundary: a single capital
//! letter (`M. Tullius`) or one of the Latin praenomen/calendar forms in
//! [`LATIN_ABBREVIATIONS`].

use super::normalize::{collapse_whitespace, is_word_char};
use super::{Language, Sentence};

pub const LATIN_TERMINATORS: &[char] = &['.', ';', '?', '!'];
/// `·` is the NFC form of the ano teleia; `;` the NFC form of the Greek
/// question mark. The pre-normalization code points are listed too.
pub const GREEK_TERMINATORS: &[char] = &['.', ';', '\u{00B7}', '!', '\u{0387}', '\u{037E}'];

pub const LATIN_ABBREVIATIONS: &[&str] = &["Cn", "Sex", "Ti", "Tib", "Ser", "Sp", "Ap", "Kal", "Non"];

const CLOSERS: &[char] = &['"', '\'', '»', '”', '’', ')', ']', '›'];

pub fn terminators(language: Language) -> &'static [char] {
    match language {
        Language::Greek => GREEK_TERMINATORS,
        Language::Latin => LATIN_TERMINATORS,
    }
}

fn is_abbreviation(before: &str) -> bool {
    let word: String = {
        let mut rev: Vec<char> = before.chars().rev().take_while(|&c| is_word_char(c)).collect();
        rev.reverse();
        rev.into_iter().collect()
    };
    let mut chars = word.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_uppercase() => true,
        _ => LATIN_ABBREVIATIONS.contains(&word.as_str()),
    }
}

/// Splits NFC text into sentences with collapsed whitespace.
pub fn segment_sentences(text: &str, language: Language) -> Vec<Sentence> {
    let terms = terminators(language);
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut pieces = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !terms.contains(&c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (terms.contains(&chars[j].1) || CLOSERS.contains(&chars[j].1)) {
            j += 1;
        }
        let at_end = j == chars.len();
        let spaced = at_end || chars[j].1.is_whitespace();
        let abbreviated = c == '.' && j == i + 1 && is_abbreviation(&text[start..pos]);
        if spaced && !abbreviated {
            let end = if at_end { text.len() } else { chars[j].0 };
            pieces.push(&text[start..end]);
            start = end;
        }
        i = j;
    }
    pieces.push(&text[start..]);

    pieces
        .into_iter()
        .map(collapse_whitespace)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(index, text)| Sentence { index, text })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &[Sentence]) -> Vec<&str> {
        s.iter().map(|s| s.text.as_str()).collect()
    }

    #[test]
    fn latin_two_sentences() {
        let s = segment_sentences("Arma virumque cano. Troiae qui primus ab oris.", Language::Latin);
        assert_eq!(texts(&s), ["Arma virumque cano.", "Troiae qui primus ab oris."]);
        assert_eq!(s[1].index, 1);
    }

    #[test]
    fn greek_ano_teleia_and_question_mark() {
        // Worked by hand: boundaries after "ἐστιν·", "ψυχή;" and the final period.
        let text = "ἡ ψυχὴ ἀθάνατός ἐστιν· τί ἐστιν ἡ ψυχή; λέγει ὁ Σωκράτης.";
        let s = segment_sentences(text, Language::Greek);
        assert_eq!(texts(&s), ["ἡ ψυχὴ ἀθάνατός ἐστιν·", "τί ἐστιν ἡ ψυχή;", "λέγει ὁ Σωκράτης."]);
    }

    #[test]
    fn question_mark_is_latin_only() {
        assert_eq!(segment_sentences("quid est? nihil.", Language::Latin).len(), 2);
        assert_eq!(segment_sentences("τί? οὐδέν.", Language::Greek).len(), 1);
    }

    #[test]
    fn empty_input() {
        assert!(segment_sentences("", Language::Latin).is_empty());
        assert!(segment_sentences("   \n ", Language::Greek).is_empty());
    }

    #[test]
    fn abbreviations_do_not_split() {
        let s = segment_sentences("M. Tullius Cicero et Cn. Pompeius venerunt. Tum abierunt.", Language::Latin);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "M. Tullius Cicero et Cn. Pompeius venerunt.");
    }

    #[test]
    fn closing_quotes_stay_attached() {
        let s = segment_sentences("dixit «veni.» Tum ivit.", Language::Latin);
        assert_eq!(texts(&s), ["dixit «veni.»", "Tum ivit."]);
    }

    #[test]
    fn no_terminator_is_one_sentence() {
        let s = segment_sentences("  arma  virumque\ncano ", Language::Latin);
        assert_eq!(texts(&s), ["arma virumque cano"]);
    }
}
