//! Descriptive statistics, two-sample t-tests, bootstrap intervals, genre
//! ANOVA with variance components, and the distillation loss.

mod anova;
mod bootstrap;
mod distill;
pub mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use anova::{one_way_anova, variance_components, Anova, VarianceDecomposition};
pub use bootstrap::{bootstrap_ci, BootstrapCi, DEFAULT_ITERATIONS, DEFAULT_LEVEL};
pub use distill::{
    distillation_gradient, distillation_loss, finite_difference_gradcheck, inverse_frequency_weight, kl_divergence,
    softmax, DistillationInputs, DistillationLoss,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descriptive {
    pub mean: f64,
    /// Sample standard deviation (n − 1); 0 for a single value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance with n − 1 denominator.
pub fn sample_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (values.len() - 1) as f64
}

pub fn descriptive_stats(values: &[f64]) -> Result<Descriptive> {
    if values.is_empty() {
        return Err(Error::EmptyInput("descriptive statistics"));
    }
    let std = if values.len() == 1 { 0.0 } else { sample_variance(values).sqrt() };
    Ok(Descriptive {
        mean: mean(values),
        std,
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TTest {
    pub t: f64,
    pub df: f64,
    /// Two-sided.
    pub p: f64,
}

fn check_groups(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    for g in [a, b] {
        if g.len() < 2 {
            return Err(Error::Size { needed: 2, found: g.len() });
        }
    }
    let (va, vb) = (sample_variance(a), sample_variance(b));
    if va == 0.0 && vb == 0.0 {
        return Err(Error::Degenerate("both groups have zero variance".into()));
    }
    Ok((va, vb))
}

/// Unequal-variance t-test with Welch–Satterthwaite degrees of freedom.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TTest> {
    let (va, vb) = check_groups(a, b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;
    let t = (mean(a) - mean(b)) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    Ok(TTest { t, df, p: special::t_two_sided_p(t, df) })
}

/// Pooled-variance (Student) t-test with `n_a + n_b − 2` degrees of freedom.
pub fn student_t_test(a: &[f64], b: &[f64]) -> Result<TTest> {
    let (va, vb) = check_groups(a, b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let df = na + nb - 2.0;
    let pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / df;
    let t = (mean(a) - mean(b)) / (pooled * (1.0 / na + 1.0 / nb)).sqrt();
    Ok(TTest { t, df, p: special::t_two_sided_p(t, df) })
}
