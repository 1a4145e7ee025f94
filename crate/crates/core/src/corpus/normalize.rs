//! Text normalization shared by storage and matching.
//!
//! Stored text is NFC only. Match keys are additionally lower-cased and
//! have final sigma folded to medial sigma.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

/// Match key for a single token: NFC, lower case, `ς` → `σ`.
///
/// Grave accents fold to acute: an oxytone written ψυχὴ before another
/// word is the same form as ψυχή.
pub fn match_key(token: &str) -> String {
    nfc(token)
        .to_lowercase()
        .nfd()
        .map(|c| match c {
            '\u{0300}' => '\u{0301}',
            'ς' => 'σ',
            c => c,
        })
        .nfc()
        .collect()
}

pub fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || is_combining_mark(c)
}

/// Maximal runs of word characters, borrowed from `text`.
pub fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !is_word_char(c)).filter(|t| !t.is_empty())
}

/// Collapses whitespace runs to one space and trims the ends.
pub fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}
