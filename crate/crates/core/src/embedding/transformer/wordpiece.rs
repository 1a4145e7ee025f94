//! BERT basic + WordPiece tokenization, compatible with the Hugging Face
//! `BertTokenizer` for cased vocabularies.

use std::collections::HashMap;

use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

const MAX_WORD_CHARS: usize = 100;

#[derive(Debug, Clone)]
pub struct WordPiece {
    vocab: HashMap<String, u32>,
    lowercase: bool,
    unk: u32,
    cls: u32,
    sep: u32,
}

fn is_punctuation(c: char) -> bool {
    let cp = c as u32;
    if (33..=47).contains(&cp) || (58..=64).contains(&cp) || (91..=96).contains(&cp) || (123..=126).contains(&cp) {
        return true;
    }
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
    )
}

fn is_control(c: char) -> bool {
    if matches!(c, '\t' | '\n' | '\r') {
        return false;
    }
    use GeneralCategory::*;
    matches!(get_general_category(c), Control | Format)
}

fn is_whitespace(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r') || get_general_category(c) == GeneralCategory::SpaceSeparator
}

fn is_cjk(c: char) -> bool {
    matches!(c as u32,
        0x4E00..=0x9FFF | 0x3400..=0x4DBF | 0x20000..=0x2A6DF | 0x2A700..=0x2B73F
        | 0x2B740..=0x2B81F | 0x2B820..=0x2CEAF | 0xF900..=0xFAFF | 0x2F800..=0x2FA1F)
}

impl WordPiece {
    /// `vocab_text` is the contents of `vocab.txt`, one token per line.
    pub fn from_vocab(vocab_text: &str, lowercase: bool) -> Option<Self> {
        let vocab: HashMap<String, u32> =
            vocab_text.lines().enumerate().map(|(i, t)| (t.trim_end_matches('\r').to_string(), i as u32)).collect();
        Some(WordPiece {
            unk: *vocab.get("[UNK]")?,
            cls: *vocab.get("[CLS]")?,
            sep: *vocab.get("[SEP]")?,
            vocab,
            lowercase,
        })
    }

    fn basic_tokens(&self, text: &str) -> Vec<String> {
        let mut cleaned = String::with_capacity(text.len());
        for c in text.chars() {
            if c == '\0' || c == '\u{FFFD}' || is_control(c) {
                continue;
            }
            if is_whitespace(c) {
                cleaned.push(' ');
            } else if is_cjk(c) {
                cleaned.push(' ');
                cleaned.push(c);
                cleaned.push(' ');
            } else {
                cleaned.push(c);
            }
        }
        let mut out = Vec::new();
        for word in cleaned.split_whitespace() {
            let word = if self.lowercase {
                word.to_lowercase().nfd().filter(|c| !is_combining_mark(*c)).collect::<String>()
            } else {
                word.to_string()
            };
            let mut current = String::new();
            for c in word.chars() {
                if is_punctuation(c) {
                    if !current.is_empty() {
                        out.push(std::mem::take(&mut current));
                    }
                    out.push(c.to_string());
                } else {
                    current.push(c);
                }
            }
            if !current.is_empty() {
                out.push(current);
            }
        }
        out
    }

    fn word_pieces(&self, word: &str, out: &mut Vec<u32>) {
        let chars: Vec<char> = word.chars().collect();
        if chars.len() > MAX_WORD_CHARS {
            out.push(self.unk);
            return;
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        while start < chars.len() {
            let mut end = chars.len();
            let mut found = None;
            while start < end {
                let mut piece: String = chars[start..end].iter().collect();
                if start > 0 {
                    piece.insert_str(0, "##");
                }
                if let Some(&id) = self.vocab.get(&piece) {
                    found = Some(id);
                    break;
                }
                end -= 1;
            }
            match found {
                Some(id) => pieces.push(id),
                None => {
                    out.push(self.unk);
                    return;
                }
            }
            start = end;
        }
        out.extend(pieces);
    }

    /// Token ids without special tokens.
    pub fn tokenize(&self, text: &str) -> Vec<u32> {
        let mut ids = Vec::new();
        for w in self.basic_tokens(text) {
            self.word_pieces(&w, &mut ids);
        }
        ids
    }

    /// `[CLS] tokens [SEP]`, truncated to `max_len` positions in total.
    pub fn encode(&self, text: &str, max_len: usize) -> Vec<u32> {
        let mut body = self.tokenize(text);
        body.truncate(max_len.saturating_sub(2));
        let mut ids = Vec::with_capacity(body.len() + 2);
        ids.push(self.cls);
        ids.extend(body);
        if max_len >= 2 {
            ids.push(self.sep);
        }
        ids
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok() -> WordPiece {
        let vocab = "[PAD]\n[UNK]\n[CLS]\n[SEP]\nar\n##ma\n.\nψυχ\n##ή\n,";
        WordPiece::from_vocab(vocab, false).unwrap()
    }

    #[test]
    fn greedy_longest_match() {
        let t = tok();
        assert_eq!(t.tokenize("arma. ψυχή,"), vec![4, 5, 6, 7, 8, 9]);
        assert_eq!(t.tokenize("xyz"), vec![1]);
    }

    #[test]
    fn encode_truncates() {
        let t = tok();
        let text = "arma ".repeat(1000);
        let ids = t.encode(&text, 512);
        assert_eq!(ids.len(), 512);
        assert_eq!(ids[0], 2);
        assert_eq!(ids[511], 3);
        assert_eq!(t.encode("arma", 1), vec![2]);
    }
}
