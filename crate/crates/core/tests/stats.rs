//! Statistics against independent references: scipy values recorded
//! below, and statrs distributions for p-values on random inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use statrs::distribution::{ContinuousCDF, FisherSnedecor, StudentsT};

use lexsim::stats::special::{f_upper_p, t_two_sided_p};
use lexsim::stats::{
    descriptive_stats, inverse_frequency_weight, one_way_anova, student_t_test, variance_components, welch_t_test,
};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

fn groups(gs: &[&[f64]]) -> BTreeMap<String, Vec<f64>> {
    gs.iter().enumerate().map(|(i, g)| (format!("g{i}"), g.to_vec())).collect()
}

#[test]
fn t_tests_match_scipy() {
    let a = [0.81, 0.82, 0.80, 0.83, 0.815];
    let b = [0.76, 0.79, 0.78, 0.80, 0.77];
    let s = student_t_test(&a, &b).unwrap();
    assert!(close(s.t, 4.041451884327361, 1e-10));
    assert_eq!(s.df, 8.0);
    assert!(close(s.p, 0.00372821590830729, 1e-8));
    let w = welch_t_test(&a, &b).unwrap();
    assert!(close(w.df, 7.2, 1e-10));
    assert!(close(w.p, 0.004642733077762201, 1e-8));
    let w = welch_t_test(&[2.0, 4.0, 6.0], &[1.0, 2.0, 3.0]).unwrap();
    assert!(close(w.t, 1.5491933384829668, 1e-12));
    assert!(close(w.df, 2.9411764705882346, 1e-12));
    assert!(close(w.p, 0.2208808404940958, 1e-8));
}

#[test]
fn anova_matches_scipy() {
    let r = one_way_anova(&groups(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.5]])).unwrap();
    assert!(close(r.f, 23.883720930232542, 1e-10));
    assert!(close(r.p, 0.0013896186324728918, 1e-8));
    let r =
        one_way_anova(&groups(&[&[0.81, 0.79, 0.83, 0.80], &[0.76, 0.78], &[0.70, 0.74, 0.72, 0.71, 0.73]])).unwrap();
    assert!(close(r.f, 33.187294633077855, 1e-9));
    assert!(close(r.p, 0.0001338633306785395, 1e-8));
}

#[test]
fn tail_probabilities_match_scipy() {
    assert!(close(t_two_sided_p(40.0, 3.0), 3.438068078915854e-05, 1e-8));
    assert!(close(f_upper_p(0.001, 4.0, 200.0), 0.999997982745079, 1e-10));
    assert_eq!(t_two_sided_p(0.0, 5.0), 1.0);
    assert_eq!(f_upper_p(0.0, 2.0, 5.0), 1.0);
}

#[test]
fn p_values_match_statrs() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..500 {
        let df: f64 = rng.gen_range(1.0..200.0);
        let t: f64 = rng.gen_range(-12.0..12.0);
        let want = 2.0 * StudentsT::new(0.0, 1.0, df).unwrap().sf(t.abs());
        let got = t_two_sided_p(t, df);
        assert!((got - want).abs() < 1e-10 || close(got, want, 1e-8), "t={t} df={df}: {got} vs {want}");

        let d1 = rng.gen_range(1..12) as f64;
        let d2 = rng.gen_range(2..300) as f64;
        let f: f64 = rng.gen_range(0.0..30.0);
        let want = FisherSnedecor::new(d1, d2).unwrap().sf(f);
        let got = f_upper_p(f, d1, d2);
        assert!((got - want).abs() < 1e-10 || close(got, want, 1e-8), "F={f} ({d1}, {d2}): {got} vs {want}");
    }
}

#[test]
fn descriptive_values() {
    let d = descriptive_stats(&[0.811, 0.814, 0.817, 0.809, 0.819]).unwrap();
    assert!(close(d.mean, 0.814, 1e-12));
    assert_eq!((d.min, d.max), (0.809, 0.819));
    let direct = ((0.003f64.powi(2) + 0.0 + 0.003f64.powi(2) + 0.005f64.powi(2) + 0.005f64.powi(2)) / 4.0).sqrt();
    assert!(close(d.std, direct, 1e-9));
    assert_eq!(descriptive_stats(&[3.0]).unwrap().std, 0.0);
    assert!(descriptive_stats(&[]).is_err());
}

#[test]
fn two_group_anova_is_squared_student_t() {
    let a = [1.0, 2.5, 3.0, 4.2];
    let b = [2.0, 3.5, 5.0, 6.1, 4.4];
    let t = student_t_test(&a, &b).unwrap();
    let f = one_way_anova(&groups(&[&a, &b])).unwrap();
    assert!(close(f.f, t.t * t.t, 1e-12));
    assert!(close(f.p, t.p, 1e-9));
}

/// Simulated random-effects data: genre effects ~ N(0, τ²), residuals
/// ~ N(0, σ²). The estimated share α should track τ² / (τ² + σ²).
fn simulate(tau: f64, sigma: f64, k: usize, n: usize, seed: u64) -> f64 {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let effect = Normal::new(0.0, tau.max(1e-300)).unwrap();
    let noise = Normal::new(0.0, sigma).unwrap();
    let gs: BTreeMap<String, Vec<f64>> = (0..k)
        .map(|g| {
            let e = if tau > 0.0 { effect.sample(&mut rng) } else { 0.0 };
            (format!("genre{g}"), (0..n).map(|_| 0.8 + e + noise.sample(&mut rng)).collect())
        })
        .collect();
    variance_components(&gs).unwrap().alpha
}

#[test]
fn variance_share_simulations() {
    let mean_alpha =
        |tau: f64, sigma: f64| -> f64 { (0..40).map(|s| simulate(tau, sigma, 6, 30, s)).sum::<f64>() / 40.0 };
    let none = mean_alpha(0.0, 0.05);
    assert!(none < 0.15, "no genre effect: alpha {none}");
    let strong = mean_alpha(0.2, 0.02);
    assert!(strong > 0.9, "strong genre effect: alpha {strong}");
    let half = mean_alpha(0.05, 0.05);
    assert!((0.25..0.75).contains(&half), "equal variances: alpha {half}");
}

#[test]
fn inverse_frequency_weights() {
    let w: Vec<f64> = (1..200).map(|c| inverse_frequency_weight(c).unwrap()).collect();
    assert!(w.windows(2).all(|p| p[0] > p[1]));
    assert!(inverse_frequency_weight(0).is_err());
    assert!(inverse_frequency_weight(-3).is_err());
}
