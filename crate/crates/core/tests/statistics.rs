//! Statistical checks against independently sampled data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wizdata_core::{
    basic_wizscore, classify_words, fit_power_law, generate_wordnet, reach_comparison,
    ClassificationConfig, GrowthParams, HypothesisError, ScoreMethod, WeightMode,
};

/// Exact discrete power law `p(x) ~ x^-alpha` on `x >= xmin`, by inverse
/// transform over a tabulated CDF (the tail past the table uses the
/// continuous approximation; its mass is below 1e-7 here).
fn discrete_power_law(alpha: f64, xmin: u64, n: usize, seed: u64) -> Vec<u64> {
    const TABLE_END: u64 = 200_000;
    let weights: Vec<f64> = (xmin..=TABLE_END).map(|x| (x as f64).powf(-alpha)).collect();
    let tail_mass = (TABLE_END as f64 + 0.5).powf(1.0 - alpha) / (alpha - 1.0);
    let total: f64 = weights.iter().sum::<f64>() + tail_mass;
    let mut cdf = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cdf.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            match cdf.iter().position(|&c| u <= c) {
                Some(i) => xmin + i as u64,
                None => {
                    let rest = (1.0 - u) / (1.0 - acc);
                    let x = (TABLE_END as f64 + 0.5) * rest.powf(-1.0 / (alpha - 1.0));
                    x.round() as u64
                }
            }
        })
        .collect()
}

fn geometric(p: f64, n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.gen::<f64>();
            (u.ln() / (1.0 - p).ln()).ceil().max(1.0) as u64
        })
        .collect()
}

#[test]
fn recovers_power_law_exponent() {
    let samples = discrete_power_law(2.5, 5, 5000, 2024);
    let fit = fit_power_law(&samples).unwrap();
    assert!(
        (2.3..=2.7).contains(&fit.alpha_hat),
        "alpha_hat {} (xmin {}, n_tail {})",
        fit.alpha_hat,
        fit.xmin,
        fit.n_tail
    );
    assert!(fit.n_tail <= samples.len());
}

#[test]
fn exponent_is_stable_across_seeds() {
    let a = fit_power_law(&discrete_power_law(2.5, 5, 5000, 1)).unwrap();
    let b = fit_power_law(&discrete_power_law(2.5, 5, 5000, 2)).unwrap();
    assert!((a.alpha_hat - b.alpha_hat).abs() < 0.2, "{} vs {}", a.alpha_hat, b.alpha_hat);
}

#[test]
fn geometric_tail_fits_worse() {
    let pl = fit_power_law(&discrete_power_law(2.5, 5, 5000, 2024)).unwrap();
    let geo = fit_power_law(&geometric(0.2, 5000, 2024)).unwrap();
    assert!(
        geo.ks_distance > pl.ks_distance,
        "geometric {} vs power law {}",
        geo.ks_distance,
        pl.ks_distance
    );
}

#[test]
fn identical_samples_have_no_tail() {
    assert_eq!(fit_power_law(&[7; 5000]), Err(HypothesisError::InsufficientData));
}

fn positive_in_degrees(params: &GrowthParams) -> Vec<u64> {
    generate_wordnet(params)
        .unwrap()
        .in_degrees()
        .into_iter()
        .filter(|&d| d > 0)
        .map(|d| d as u64)
        .collect()
}

#[test]
fn preferential_growth_has_heavy_tail() {
    let params = GrowthParams {
        n_nodes: 10_000,
        m_edges_per_node: 3,
        alpha: 1.0,
        beta: 0.0,
        seed: 7,
        weight_mode: WeightMode::Unit,
    };
    let fit = fit_power_law(&positive_in_degrees(&params)).unwrap();
    assert!((2.0..=3.5).contains(&fit.alpha_hat), "alpha_hat {}", fit.alpha_hat);
}

#[test]
fn wizwords_reach_further_in_preferential_net() {
    let net = generate_wordnet(&GrowthParams {
        n_nodes: 1000,
        m_edges_per_node: 2,
        alpha: 1.0,
        beta: 0.0,
        seed: 3,
        weight_mode: WeightMode::Unit,
    })
    .unwrap();
    let config = ClassificationConfig {
        score_method: ScoreMethod::Basic,
        ..ClassificationConfig::default()
    };
    let classes = classify_words(&net, &basic_wizscore(&net), &config).unwrap();
    let report = reach_comparison(&net, &classes).unwrap();
    assert!(report.wizword_mean > report.other_mean, "{report:?}");
    let bound = (net.node_count() - 1) as f64;
    assert!(report.wizword_mean <= bound && report.other_mean <= bound);
}
