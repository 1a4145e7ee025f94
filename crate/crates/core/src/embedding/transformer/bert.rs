//! Inference-only BERT encoder over safetensors weights.

use ndarray::{s, Array1, Array2, ArrayView2, Axis};
use safetensors::{Dtype, SafeTensors};
use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
pub struct BertConfig {
    pub vocab_size: usize,
    pub hidden_size: usize,
    pub num_hidden_layers: usize,
    pub num_attention_heads: usize,
    pub intermediate_size: usize,
    pub max_position_embeddings: usize,
    #[serde(default = "default_type_vocab")]
    pub type_vocab_size: usize,
    #[serde(default = "default_eps")]
    pub layer_norm_eps: f64,
    #[serde(default = "default_act")]
    pub hidden_act: String,
}

fn default_type_vocab() -> usize {
    2
}
fn default_eps() -> f64 {
    1e-12
}
fn default_act() -> String {
    "gelu".into()
}

struct Linear {
    weight: Array2<f32>, // out × in
    bias: Array1<f32>,
}

impl Linear {
    fn forward(&self, x: &Array2<f32>) -> Array2<f32> {
        x.dot(&self.weight.t()) + &self.bias
    }
}

struct LayerNorm {
    gamma: Array1<f32>,
    beta: Array1<f32>,
    eps: f32,
}

impl LayerNorm {
    fn forward(&self, x: &Array2<f32>) -> Array2<f32> {
        let mut out = x.clone();
        for mut row in out.rows_mut() {
            let n = row.len() as f32;
            let mean = row.sum() / n;
            let var = row.iter().map(|v| (v - mean) * (v - mean)).sum::<f32>() / n;
            let inv = 1.0 / (var + self.eps).sqrt();
            for (v, (g, b)) in row.iter_mut().zip(self.gamma.iter().zip(&self.beta)) {
                *v = (*v - mean) * inv * g + b;
            }
        }
        out
    }
}

struct Layer {
    query: Linear,
    key: Linear,
    value: Linear,
    attn_out: Linear,
    attn_norm: LayerNorm,
    intermediate: Linear,
    output: Linear,
    out_norm: LayerNorm,
}

#[derive(Clone, Copy)]
enum Activation {
    Gelu,
    GeluTanh,
    Relu,
}

impl Activation {
    fn apply(self, x: f32) -> f32 {
        match self {
            Activation::Gelu => 0.5 * x * (1.0 + libm::erff(x / std::f32::consts::SQRT_2)),
            Activation::GeluTanh => {
                let c = (2.0 / std::f32::consts::PI).sqrt();
                0.5 * x * (1.0 + (c * (x + 0.044715 * x * x * x)).tanh())
            }
            Activation::Relu => x.max(0.0),
        }
    }
}

pub struct BertEncoder {
    config: BertConfig,
    word: Array2<f32>,
    position: Array2<f32>,
    token_type: Array2<f32>,
    embed_norm: LayerNorm,
    layers: Vec<Layer>,
    activation: Activation,
}

struct Weights<'a> {
    tensors: SafeTensors<'a>,
    prefix: &'static str,
}

impl Weights<'_> {
    fn raw(&self, name: &str) -> Result<(Vec<usize>, Vec<f32>)> {
        let full = format!("{}{}", self.prefix, name);
        let view =
            self.tensors.tensor(&full).map_err(|_| Error::BackendUnavailable(format!("missing weight {full}")))?;
        let data = view.data();
        let values: Vec<f32> = match view.dtype() {
            Dtype::F32 => data.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect(),
            Dtype::F16 => data.chunks_exact(2).map(|c| half::f16::from_le_bytes([c[0], c[1]]).to_f32()).collect(),
            Dtype::BF16 => data.chunks_exact(2).map(|c| half::bf16::from_le_bytes([c[0], c[1]]).to_f32()).collect(),
            other => return Err(Error::BackendUnavailable(format!("unsupported dtype {other:?} for {full}"))),
        };
        Ok((view.shape().to_vec(), values))
    }

    fn has(&self, name: &str) -> bool {
        self.tensors.tensor(&format!("{}{}", self.prefix, name)).is_ok()
    }

    fn matrix(&self, name: &str, rows: usize, cols: usize) -> Result<Array2<f32>> {
        let (shape, v) = self.raw(name)?;
        if shape != [rows, cols] {
            return Err(Error::BackendUnavailable(format!("{name}: shape {shape:?}, expected [{rows}, {cols}]")));
        }
        Ok(Array2::from_shape_vec((rows, cols), v).expect("shape checked"))
    }

    fn vector(&self, name: &str, len: usize) -> Result<Array1<f32>> {
        let (shape, v) = self.raw(name)?;
        if shape != [len] {
            return Err(Error::BackendUnavailable(format!("{name}: shape {shape:?}, expected [{len}]")));
        }
        Ok(Array1::from(v))
    }

    fn linear(&self, name: &str, out: usize, inp: usize) -> Result<Linear> {
        Ok(Linear {
            weight: self.matrix(&format!("{name}.weight"), out, inp)?,
            bias: self.vector(&format!("{name}.bias"), out)?,
        })
    }

    fn norm(&self, name: &str, dim: usize, eps: f64) -> Result<LayerNorm> {
        let (g, b) = if self.has(&format!("{name}.weight")) { ("weight", "bias") } else { ("gamma", "beta") };
        Ok(LayerNorm {
            gamma: self.vector(&format!("{name}.{g}"), dim)?,
            beta: self.vector(&format!("{name}.{b}"), dim)?,
            eps: eps as f32,
        })
    }
}

impl BertEncoder {
    pub fn from_safetensors(config: BertConfig, bytes: &[u8]) -> Result<Self> {
        let tensors = SafeTensors::deserialize(bytes)
            .map_err(|e| Error::BackendUnavailable(format!("bad safetensors file: {e}")))?;
        let prefix = if tensors.tensor("bert.embeddings.word_embeddings.weight").is_ok() { "bert." } else { "" };
        let w = Weights { tensors, prefix };
        let h = config.hidden_size;
        if config.num_attention_heads == 0 || !h.is_multiple_of(config.num_attention_heads) {
            return Err(Error::BackendUnavailable("hidden size not divisible by head count".into()));
        }
        let activation = match config.hidden_act.as_str() {
            "gelu" => Activation::Gelu,
            "gelu_new" | "gelu_pytorch_tanh" => Activation::GeluTanh,
            "relu" => Activation::Relu,
            other => return Err(Error::BackendUnavailable(format!("unsupported activation {other}"))),
        };
        let eps = config.layer_norm_eps;
        let layers = (0..config.num_hidden_layers)
            .map(|i| {
                let p = format!("encoder.layer.{i}");
                Ok(Layer {
                    query: w.linear(&format!("{p}.attention.self.query"), h, h)?,
                    key: w.linear(&format!("{p}.attention.self.key"), h, h)?,
                    value: w.linear(&format!("{p}.attention.self.value"), h, h)?,
                    attn_out: w.linear(&format!("{p}.attention.output.dense"), h, h)?,
                    attn_norm: w.norm(&format!("{p}.attention.output.LayerNorm"), h, eps)?,
                    intermediate: w.linear(&format!("{p}.intermediate.dense"), config.intermediate_size, h)?,
                    output: w.linear(&format!("{p}.output.dense"), h, config.intermediate_size)?,
                    out_norm: w.norm(&format!("{p}.output.LayerNorm"), h, eps)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BertEncoder {
            word: w.matrix("embeddings.word_embeddings.weight", config.vocab_size, h)?,
            position: w.matrix("embeddings.position_embeddings.weight", config.max_position_embeddings, h)?,
            token_type: w.matrix("embeddings.token_type_embeddings.weight", config.type_vocab_size, h)?,
            embed_norm: w.norm("embeddings.LayerNorm", h, eps)?,
            layers,
            activation,
            config,
        })
    }

    pub fn hidden_size(&self) -> usize {
        self.config.hidden_size
    }

    pub fn max_positions(&self) -> usize {
        self.config.max_position_embeddings
    }

    /// Final hidden states, one row per token.
    pub fn forward(&self, ids: &[u32]) -> Array2<f32> {
        let len = ids.len().min(self.max_positions());
        let h = self.hidden_size();
        let mut x = Array2::<f32>::zeros((len, h));
        for (t, &id) in ids.iter().take(len).enumerate() {
            let id = (id as usize).min(self.config.vocab_size - 1);
            let mut row = x.row_mut(t);
            row += &self.word.row(id);
            row += &self.position.row(t);
            row += &self.token_type.row(0);
        }
        let mut x = self.embed_norm.forward(&x);
        for layer in &self.layers {
            x = self.layer_forward(layer, &x);
        }
        x
    }

    fn layer_forward(&self, layer: &Layer, x: &Array2<f32>) -> Array2<f32> {
        let heads = self.config.num_attention_heads;
        let dh = self.hidden_size() / heads;
        let q = layer.query.forward(x);
        let k = layer.key.forward(x);
        let v = layer.value.forward(x);
        let scale = 1.0 / (dh as f32).sqrt();
        let mut context = Array2::<f32>::zeros(x.raw_dim());
        for head in 0..heads {
            let cols = s![.., head * dh..(head + 1) * dh];
            let qh: ArrayView2<f32> = q.slice(cols);
            let kh = k.slice(cols);
            let vh = v.slice(cols);
            let mut scores = qh.dot(&kh.t()) * scale;
            for mut row in scores.axis_iter_mut(Axis(0)) {
                let max = row.fold(f32::NEG_INFINITY, |m, &s| m.max(s));
                row.mapv_inplace(|s| (s - max).exp());
                let sum = row.sum();
                row.mapv_inplace(|s| s / sum);
            }
            context.slice_mut(cols).assign(&scores.dot(&vh));
        }
        let attn = layer.attn_norm.forward(&(layer.attn_out.forward(&context) + x));
        let act = self.activation;
        let inter = layer.intermediate.forward(&attn).mapv(|z| act.apply(z));
        layer.out_norm.forward(&(layer.output.forward(&inter) + &attn))
    }

    /// First-position hidden state.
    pub fn pooled(&self, ids: &[u32]) -> Vec<f32> {
        if ids.is_empty() {
            return vec![0.0; self.hidden_size()];
        }
        self.forward(ids).row(0).to_vec()
    }
}
