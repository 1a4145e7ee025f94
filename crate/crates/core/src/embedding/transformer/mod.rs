//! Local BERT-family encoder: `config.json`, `vocab.txt` and
//! `model.safetensors` in one directory, as exported by Hugging Face.

mod bert;
mod wordpiece;

use std::path::Path;

pub use bert::{BertConfig, BertEncoder};
pub use wordpiece::WordPiece;

use crate::error::{Error, Result};

fn read(dir: &Path, name: &str) -> Result<Vec<u8>> {
    let path = dir.join(name);
    std::fs::read(&path).map_err(|e| Error::BackendUnavailable(format!("{}: {e}", path.display())))
}

pub fn load_model(dir: &Path) -> Result<(BertEncoder, WordPiece)> {
    if !dir.is_dir() {
        return Err(Error::BackendUnavailable(format!("model directory {} not found", dir.display())));
    }
    let config: BertConfig = serde_json::from_slice(&read(dir, "config.json")?)
        .map_err(|e| Error::BackendUnavailable(format!("config.json: {e}")))?;
    let lowercase = match read(dir, "tokenizer_config.json") {
        Ok(bytes) => serde_json::from_slice::<serde_json::Value>(&bytes)
            .ok()
            .and_then(|v| v.get("do_lower_case").and_then(|b| b.as_bool()))
            .unwrap_or(false),
        Err(_) => false,
    };
    let vocab =
        String::from_utf8(read(dir, "vocab.txt")?).map_err(|e| Error::BackendUnavailable(format!("vocab.txt: {e}")))?;
    let tokenizer = WordPiece::from_vocab(&vocab, lowercase)
        .ok_or_else(|| Error::BackendUnavailable("vocab.txt lacks [UNK]/[CLS]/[SEP]".into()))?;
    let weights = read(dir, "model.safetensors")?;
    let encoder = BertEncoder::from_safetensors(config, &weights)?;
    Ok((encoder, tokenizer))
}
