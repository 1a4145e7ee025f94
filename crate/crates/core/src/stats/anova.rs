use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{mean, special};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anova {
    pub f: f64,
    pub df_between: f64,
    pub df_within: f64,
    pub p: f64,
}

/// Random-effects split of score variance into a genre share and a
/// residual that also absorbs any temporal component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarianceDecomposition {
    pub sigma2_genre: f64,
    pub sigma2_residual: f64,
    pub alpha: f64,
    pub f: f64,
    pub p: f64,
    pub group_counts: BTreeMap<String, usize>,
}

struct Sums {
    ms_between: f64,
    ms_within: f64,
    anova: Anova,
}

fn sums(groups: &BTreeMap<String, Vec<f64>>) -> Result<Sums> {
    if groups.len() < 2 {
        return Err(Error::Degenerate(format!("ANOVA needs at least 2 groups, got {}", groups.len())));
    }
    if let Some((name, g)) = groups.iter().find(|(_, g)| g.len() < 2) {
        return Err(Error::Degenerate(format!("group {name:?} has {} value(s); need 2", g.len())));
    }
    let total: usize = groups.values().map(Vec::len).sum();
    let grand = groups.values().flatten().sum::<f64>() / total as f64;
    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    for g in groups.values() {
        let m = mean(g);
        ss_between += g.len() as f64 * (m - grand) * (m - grand);
        ss_within += g.iter().map(|x| (x - m) * (x - m)).sum::<f64>();
    }
    if ss_within <= 0.0 {
        return Err(Error::Degenerate("zero within-group variance".into()));
    }
    let df_between = (groups.len() - 1) as f64;
    let df_within = (total - groups.len()) as f64;
    let ms_between = ss_between / df_between;
    let ms_within = ss_within / df_within;
    let f = ms_between / ms_within;
    Ok(Sums {
        ms_between,
        ms_within,
        anova: Anova { f, df_between, df_within, p: special::f_upper_p(f, df_between, df_within) },
    })
}

/// One-way ANOVA: `F = MS_between / MS_within`.
pub fn one_way_anova(groups: &BTreeMap<String, Vec<f64>>) -> Result<Anova> {
    Ok(sums(groups)?.anova)
}

/// Method-of-moments estimates: residual = MS_within,
/// genre = max(0, (MS_between − MS_within) / n₀) with
/// n₀ = (N − Σnᵢ²/N) / (k − 1).
pub fn variance_components(groups: &BTreeMap<String, Vec<f64>>) -> Result<VarianceDecomposition> {
    let s = sums(groups)?;
    let total: usize = groups.values().map(Vec::len).sum();
    let n = total as f64;
    let sum_sq: f64 = groups.values().map(|g| (g.len() * g.len()) as f64).sum();
    let n0 = (n - sum_sq / n) / (groups.len() - 1) as f64;
    let sigma2_genre = ((s.ms_between - s.ms_within) / n0).max(0.0);
    let sigma2_residual = s.ms_within;
    let denom = sigma2_genre + sigma2_residual;
    Ok(VarianceDecomposition {
        sigma2_genre,
        sigma2_residual,
        alpha: if denom > 0.0 { sigma2_genre / denom } else { 0.0 },
        f: s.anova.f,
        p: s.anova.p,
        group_counts: groups.iter().map(|(k, v)| (k.clone(), v.len())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(v: &[(&str, &[f64])]) -> BTreeMap<String, Vec<f64>> {
        v.iter().map(|(k, g)| (k.to_string(), g.to_vec())).collect()
    }

    #[test]
    fn equal_means_give_zero_f() {
        let g = groups(&[("a", &[1.0, 2.0, 3.0]), ("b", &[0.0, 2.0, 4.0])]);
        let r = one_way_anova(&g).unwrap();
        assert_eq!(r.f, 0.0);
        assert_eq!(r.p, 1.0);
        assert_eq!(variance_components(&g).unwrap().alpha, 0.0);
    }

    #[test]
    fn three_group_hand_value() {
        // SSB = 146, SSW = 6, df = (2, 6) → F = 73
        let g = groups(&[("g1", &[1.0, 2.0, 3.0]), ("g2", &[2.0, 3.0, 4.0]), ("g3", &[10.0, 11.0, 12.0])]);
        let r = one_way_anova(&g).unwrap();
        assert!((r.f - 73.0).abs() < 1e-9);
        assert_eq!((r.df_between, r.df_within), (2.0, 6.0));
        let v = variance_components(&g).unwrap();
        // n0 = 3: sigma2_genre = (73 - 1) / 3 = 24
        assert!((v.sigma2_genre - 24.0).abs() < 1e-9);
        assert!((v.alpha - 24.0 / 25.0).abs() < 1e-12);
        assert_eq!(v.group_counts["g2"], 3);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(one_way_anova(&groups(&[("a", &[1.0, 2.0])])).is_err());
        assert!(one_way_anova(&groups(&[("a", &[1.0, 2.0]), ("b", &[3.0])])).is_err());
        assert!(one_way_anova(&groups(&[("a", &[1.0, 1.0]), ("b", &[3.0, 3.0])])).is_err());
    }
}
