use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Affine map `v ↦ W·v + b` applied to pooled vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub weight: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl Projection {
    pub fn identity(dim: usize) -> Self {
        let weight = (0..dim).map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        Projection { weight, bias: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.bias.len()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let p: Projection = serde_json::from_str(&text).map_err(|e| Error::format(e.line(), e.to_string()))?;
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let d = self.dim();
        if self.weight.len() != d {
            return Err(Error::Dimension { expected: d, found: self.weight.len() });
        }
        if let Some(row) = self.weight.iter().find(|r| r.len() != d) {
            return Err(Error::Dimension { expected: d, found: row.len() });
        }
        Ok(())
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        temporal_project(v, &self.weight, &self.bias)
    }
}

/// `W·v + b` for a square `W`.
pub fn temporal_project(v: &[f64], weight: &[Vec<f64>], bias: &[f64]) -> Result<Vec<f64>> {
    let d = v.len();
    if bias.len() != d {
        return Err(Error::Dimension { expected: d, found: bias.len() });
    }
    if weight.len() != d {
        return Err(Error::Dimension { expected: d, found: weight.len() });
    }
    weight
        .iter()
        .zip(bias)
        .map(|(row, b)| {
            if row.len() != d {
                return Err(Error::Dimension { expected: d, found: row.len() });
            }
            Ok(row.iter().zip(v).map(|(w, x)| w * x).sum::<f64>() + b)
        })
        .collect()
}
