//! Teacher–student distillation loss (squared error plus λ-weighted KL of
//! the softmax distributions) and a central-difference gradient check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistillationInputs {
    pub teacher: Vec<f64>,
    pub student: Vec<f64>,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ItemLoss {
    /// ‖z_t − f‖²
    pub squared_error: f64,
    /// KL(p_t ‖ p_θ), natural log, before λ.
    pub kl: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistillationLoss {
    pub total: f64,
    /// Mean squared-error term.
    pub mse: f64,
    /// Mean λ-weighted KL term.
    pub kl: f64,
    pub items: Vec<ItemLoss>,
}

fn log_softmax(x: &[f64]) -> Vec<f64> {
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + x.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
    x.iter().map(|v| v - lse).collect()
}

pub fn softmax(x: &[f64]) -> Vec<f64> {
    log_softmax(x).into_iter().map(f64::exp).collect()
}

/// KL(p ‖ q) between the softmax distributions of two logit vectors.
pub fn kl_divergence(p_logits: &[f64], q_logits: &[f64]) -> f64 {
    let lp = log_softmax(p_logits);
    let lq = log_softmax(q_logits);
    lp.iter().zip(&lq).map(|(a, b)| a.exp() * (a - b)).sum::<f64>().max(0.0)
}

fn validate(batch: &[DistillationInputs]) -> Result<()> {
    let first = batch.first().ok_or(Error::EmptyInput("distillation batch"))?;
    let dim = first.teacher.len();
    if dim == 0 {
        return Err(Error::EmptyInput("distillation vectors"));
    }
    for item in batch {
        for v in [&item.teacher, &item.student] {
            if v.len() != dim {
                return Err(Error::Dimension { expected: dim, found: v.len() });
            }
        }
        if !(item.lambda.is_finite() && item.lambda >= 0.0) {
            return Err(Error::Range { name: "lambda", value: item.lambda });
        }
    }
    Ok(())
}

pub fn distillation_loss(batch: &[DistillationInputs]) -> Result<DistillationLoss> {
    validate(batch)?;
    let n = batch.len() as f64;
    let items: Vec<ItemLoss> = batch
        .iter()
        .map(|b| ItemLoss {
            squared_error: b.teacher.iter().zip(&b.student).map(|(t, s)| (t - s) * (t - s)).sum(),
            kl: kl_divergence(&b.teacher, &b.student),
        })
        .collect();
    let mse = items.iter().map(|i| i.squared_error).sum::<f64>() / n;
    let kl = items.iter().zip(batch).map(|(i, b)| b.lambda * i.kl).sum::<f64>() / n;
    Ok(DistillationLoss { total: mse + kl, mse, kl, items })
}

/// Analytic gradient with respect to each student vector:
/// `(−2(z_t − f) + λ(softmax(f) − softmax(z_t))) / n`.
pub fn distillation_gradient(batch: &[DistillationInputs]) -> Result<Vec<Vec<f64>>> {
    validate(batch)?;
    let n = batch.len() as f64;
    Ok(batch
        .iter()
        .map(|b| {
            let pt = softmax(&b.teacher);
            let ps = softmax(&b.student);
            b.teacher
                .iter()
                .zip(&b.student)
                .zip(pt.iter().zip(&ps))
                .map(|((t, s), (pt, ps))| (-2.0 * (t - s) + b.lambda * (ps - pt)) / n)
                .collect()
        })
        .collect())
}

/// Largest relative error between `grad(point)` and central differences of
/// `loss`. The denominator is `max(|analytic|, |numeric|, 1e-8)`.
pub fn finite_difference_gradcheck<F, G>(loss: F, grad: G, point: &[f64], epsilon: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Range { name: "epsilon", value: epsilon });
    }
    let analytic = grad(point);
    if analytic.len() != point.len() {
        return Err(Error::Dimension { expected: point.len(), found: analytic.len() });
    }
    let mut x = point.to_vec();
    let mut worst = 0.0f64;
    for i in 0..x.len() {
        let orig = x[i];
        x[i] = orig + epsilon;
        let up = loss(&x);
        x[i] = orig - epsilon;
        let down = loss(&x);
        x[i] = orig;
        if !(up.is_finite() && down.is_finite()) {
            return Err(Error::Numeric(format!("loss not finite near coordinate {i}")));
        }
        let numeric = (up - down) / (2.0 * epsilon);
        let denom = analytic[i].abs().max(numeric.abs()).max(1e-8);
        worst = worst.max((analytic[i] - numeric).abs() / denom);
    }
    Ok(worst)
}

/// `1 / ln(count + 1)`.
pub fn inverse_frequency_weight(count: i64) -> Result<f64> {
    if count <= 0 {
        return Err(Error::Range { name: "count", value: count as f64 });
    }
    Ok(1.0 / ((count + 1) as f64).ln())
}
