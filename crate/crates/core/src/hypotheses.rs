//! Statistics over in-degree distributions: top-share (Pareto) and Gini,
//! power-law tail fitting, and the wizword vs. non-wizword reach comparison.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{ClassLabel, Classification};
use crate::wizpath::reach_count;
use crate::wordnet::WordNet;

/// Smallest tail accepted by [`fit_power_law`].
pub const MIN_TAIL: usize = 10;

#[derive(Debug, Error, PartialEq)]
pub enum HypothesisError {
    #[error("the net has no edges")]
    EmptyNet,
    #[error("top fraction {0} must lie in (0, 1)")]
    BadFraction(f64),
    #[error("no candidate tail has at least {MIN_TAIL} samples and two distinct values")]
    InsufficientData,
    #[error("samples must be positive integers")]
    NonPositiveSample,
    #[error("need at least one wizword and one other node")]
    DegenerateClasses,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoReport {
    pub top_fraction: f64,
    pub top_count: usize,
    /// Share of all references received by the `top_count` most referenced nodes.
    pub share: f64,
    pub gini: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub alpha_hat: f64,
    pub xmin: u64,
    pub ks_distance: f64,
    pub n_tail: usize,
    pub n_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachComparison {
    pub wizword_mean: f64,
    pub other_mean: f64,
    pub wizword_count: usize,
    pub other_count: usize,
}

/// Gini coefficient of a non-negative sample; 0 when the sample sums to 0.
pub fn gini(values: &[usize]) -> f64 {
    let n = values.len();
    let total: usize = values.iter().sum();
    if n == 0 || total == 0 {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (i + 1) as f64 * x as f64)
        .sum();
    let n = n as f64;
    (2.0 * weighted / (n * total as f64) - (n + 1.0) / n).max(0.0)
}

pub fn pareto_share(net: &WordNet, top_fraction: f64) -> Result<ParetoReport, HypothesisError> {
    if !(top_fraction > 0.0 && top_fraction < 1.0) {
        return Err(HypothesisError::BadFraction(top_fraction));
    }
    if net.edge_count() == 0 {
        return Err(HypothesisError::EmptyNet);
    }
    let degrees = net.in_degrees();
    // ids are already ascending, so a stable sort keeps id order within ties
    let mut ranked = degrees.clone();
    ranked.sort_by(|a, b| b.cmp(a));
    let n = ranked.len();
    // the epsilon keeps products like 0.7 * 10 from rounding up a whole node
    let top_count = ((top_fraction * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
    let top: usize = ranked[..top_count].iter().sum();
    Ok(ParetoReport {
        top_fraction,
        top_count,
        share: top as f64 / net.edge_count() as f64,
        gini: gini(&degrees),
    })
}

/// `value -> count` for a sample, ascending by value.
pub fn degree_histogram(samples: &[usize]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for &s in samples {
        *hist.entry(s).or_insert(0) += 1;
    }
    hist
}

/// Fits a discrete power-law tail `p(x) ~ x^-alpha, x >= xmin`.
///
/// For each candidate `xmin` (every distinct sample value whose tail holds at
/// least [`MIN_TAIL`] samples and two distinct values) the exponent is the
/// continuous-approximation MLE `1 + n / sum ln(x / (xmin - 1/2))`; the
/// candidate with the smallest Kolmogorov-Smirnov distance wins, ties going
/// to the smaller `xmin`.
pub fn fit_power_law(samples: &[u64]) -> Result<PowerLawFit, HypothesisError> {
    if samples.contains(&0) {
        return Err(HypothesisError::NonPositiveSample);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let n_samples = sorted.len();

    // (value, first index in `sorted`)
    let mut distinct: Vec<(u64, usize)> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        if distinct.last().is_none_or(|&(v, _)| v != x) {
            distinct.push((x, i));
        }
    }
    let mut suffix_ln = vec![0.0f64; n_samples + 1];
    for i in (0..n_samples).rev() {
        suffix_ln[i] = suffix_ln[i + 1] + (sorted[i] as f64).ln();
    }

    let mut best: Option<PowerLawFit> = None;
    for (k, &(xmin, start)) in distinct.iter().enumerate() {
        let n_tail = n_samples - start;
        if n_tail < MIN_TAIL || k + 1 == distinct.len() {
            continue;
        }
        let shift = xmin as f64 - 0.5;
        let log_sum = suffix_ln[start] - n_tail as f64 * shift.ln();
        let alpha_hat = 1.0 + n_tail as f64 / log_sum;
        let ks_distance = ks_distance(&distinct[k..], start, n_samples, shift, alpha_hat);
        if best.as_ref().is_none_or(|b| ks_distance < b.ks_distance) {
            best = Some(PowerLawFit {
                alpha_hat,
                xmin,
                ks_distance,
                n_tail,
                n_samples,
            });
        }
    }
    best.ok_or(HypothesisError::InsufficientData)
}

/// Sup distance between the empirical tail CDF and the fitted
/// `P(X <= x) = 1 - ((x + 1/2) / shift)^(1 - alpha)` over the integers `>= xmin`.
fn ks_distance(tail: &[(u64, usize)], start: usize, n_samples: usize, shift: f64, alpha: f64) -> f64 {
    let n_tail = (n_samples - start) as f64;
    let model = |x: u64| 1.0 - ((x as f64 + 0.5) / shift).powf(1.0 - alpha);
    let mut distance = 0.0f64;
    let mut below = 0.0; // empirical CDF just below the current value
    for (j, &(value, _)) in tail.iter().enumerate() {
        let next_start = tail.get(j + 1).map_or(n_samples, |&(_, s)| s);
        let at = (next_start - start) as f64 / n_tail;
        // the model keeps rising across integer gaps while the empirical CDF is flat
        if j > 0 && value - 1 > tail[j - 1].0 {
            distance = distance.max((model(value - 1) - below).abs());
        }
        distance = distance.max((model(value) - at).abs());
        below = at;
    }
    distance
}

pub fn reach_comparison(
    net: &WordNet,
    classification: &Classification,
) -> Result<ReachComparison, HypothesisError> {
    let wiz = classification.mask(net, ClassLabel::Wizword);
    let (mut wiz_sum, mut wiz_n, mut other_sum, mut other_n) = (0usize, 0usize, 0usize, 0usize);
    for (i, &is_wiz) in wiz.iter().enumerate() {
        let reach = reach_count(net, i);
        if is_wiz {
            wiz_sum += reach;
            wiz_n += 1;
        } else {
            other_sum += reach;
            other_n += 1;
        }
    }
    if wiz_n == 0 || other_n == 0 {
        return Err(HypothesisError::DegenerateClasses);
    }
    Ok(ReachComparison {
        wizword_mean: wiz_sum as f64 / wiz_n as f64,
        other_mean: other_sum as f64 / other_n as f64,
        wizword_count: wiz_n,
        other_count: other_n,
    })
}
