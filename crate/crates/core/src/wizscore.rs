//! Wizscores: reference-count quality metrics normalized to `[0, 1]`.
//!
//! * basic: `in_degree(x) / max_ref`
//! * fair, one level: `sum_i basic(x_i) * w(x_i -> x) / max_ref` over referrers `x_i`
//! * fair, iterative: fixed point of
//!   `s = (1 - damping) * basic + damping * F(s)`, with
//!   `F(s)(x) = sum_i s(x_i) * w(x_i -> x) / max_ref`
//!
//! `max_ref` is the maximum raw in-degree. Every method yields all zeros on
//! an edgeless net.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wordnet::{WordId, WordNet};

#[derive(Debug, Error, PartialEq)]
pub enum ScoreError {
    #[error("score {0} is outside [0, 1]")]
    Domain(f64),
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreMethod {
    Basic,
    FairOnelevel,
    FairIterative,
}

impl fmt::Display for ScoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreMethod::Basic => "basic",
            ScoreMethod::FairOnelevel => "fair_onelevel",
            ScoreMethod::FairIterative => "fair_iterative",
        })
    }
}

/// One score per node of the net it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreTable {
    method: ScoreMethod,
    scores: BTreeMap<WordId, f64>,
}

impl ScoreTable {
    /// Builds a table from explicit values. Values must lie in `[0, 1]`.
    pub fn from_map(method: ScoreMethod, scores: BTreeMap<WordId, f64>) -> Result<Self, ScoreError> {
        if let Some(&bad) = scores.values().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(ScoreError::Domain(bad));
        }
        Ok(ScoreTable { method, scores })
    }

    fn from_values(net: &WordNet, method: ScoreMethod, values: Vec<f64>) -> Self {
        let scores = net.ids().iter().cloned().zip(values).collect();
        ScoreTable { method, scores }
    }

    pub fn method(&self) -> ScoreMethod {
        self.method
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.scores.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WordId, f64)> + '_ {
        self.scores.iter().map(|(k, &v)| (k, v))
    }

    /// Scores laid out by node index of `net`; `None` if any node is missing.
    pub fn values_for(&self, net: &WordNet) -> Option<Vec<f64>> {
        net.ids().iter().map(|id| self.scores.get(id).copied()).collect()
    }
}

/// Damped fixed-point iteration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 100,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ScoreError> {
        if !(0.0..1.0).contains(&self.damping) {
            return Err(ScoreError::InvalidConfig(format!(
                "damping {} must lie in [0, 1)",
                self.damping
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(ScoreError::InvalidConfig(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(ScoreError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverReport {
    pub iterations_used: usize,
    pub final_residual: f64,
    pub converged: bool,
    /// Sup-norm change produced by each iteration, in order.
    pub residuals: Vec<f64>,
}

fn basic_values(net: &WordNet) -> Vec<f64> {
    let max_ref = net.max_ref();
    if max_ref == 0 {
        return vec![0.0; net.node_count()];
    }
    let max_ref = max_ref as f64;
    (0..net.node_count())
        .map(|x| net.in_degree(x) as f64 / max_ref)
        .collect()
}

/// `F(s)(x)`: referrer-weighted sum normalized by `max_ref`.
fn propagate(net: &WordNet, max_ref: f64, referrer_scores: &[f64], x: usize) -> f64 {
    // fold from +0.0: `Sum` for floats starts at -0.0
    let sum = net
        .referrers(x)
        .iter()
        .fold(0.0, |acc, &(src, w)| acc + referrer_scores[src] * w);
    sum / max_ref
}

pub fn basic_wizscore(net: &WordNet) -> ScoreTable {
    ScoreTable::from_values(net, ScoreMethod::Basic, basic_values(net))
}

/// Nearest integer to `100 * score`, ties away from zero.
pub fn wizscore_percentage(score: f64) -> Result<u8, ScoreError> {
    if !(0.0..=1.0).contains(&score) {
        return Err(ScoreError::Domain(score));
    }
    Ok((score * 100.0).round() as u8)
}

/// Fair score with each referrer weighted by its basic score.
pub fn fair_wizscore_onelevel(net: &WordNet) -> ScoreTable {
    let max_ref = net.max_ref();
    let values = if max_ref == 0 {
        vec![0.0; net.node_count()]
    } else {
        let basic = basic_values(net);
        (0..net.node_count())
            .map(|x| propagate(net, max_ref as f64, &basic, x).min(1.0))
            .collect()
    };
    ScoreTable::from_values(net, ScoreMethod::FairOnelevel, values)
}

/// Recursive fair score, solved by Jacobi iteration from the basic scores.
///
/// Non-convergence within `max_iterations` is reported through
/// [`SolverReport::converged`], not as an error.
pub fn fair_wizscore_iterative(
    net: &WordNet,
    config: &SolverConfig,
) -> Result<(ScoreTable, SolverReport), ScoreError> {
    config.validate()?;
    let n = net.node_count();
    let basic = basic_values(net);
    let max_ref = net.max_ref() as f64;
    let damping = config.damping;
    let anchor = 1.0 - damping;

    let mut current = basic.clone();
    let mut next = vec![0.0; n];
    let mut residuals = Vec::new();
    let mut converged = false;

    for _ in 0..config.max_iterations {
        let mut residual = 0.0f64;
        for x in 0..n {
            let spread = if max_ref > 0.0 {
                propagate(net, max_ref, &current, x)
            } else {
                0.0
            };
            let value = (anchor * basic[x] + damping * spread).min(1.0);
            residual = residual.max((value - current[x]).abs());
            next[x] = value;
        }
        std::mem::swap(&mut current, &mut next);
        residuals.push(residual);
        if residual < config.tolerance {
            converged = true;
            break;
        }
    }

    let report = SolverReport {
        iterations_used: residuals.len(),
        final_residual: residuals.last().copied().unwrap_or(0.0),
        converged,
        residuals,
    };
    Ok((ScoreTable::from_values(net, ScoreMethod::FairIterative, current), report))
}

/// Scores `net` with `method`; the solver report is present only for the
/// iterative method.
pub fn score(
    net: &WordNet,
    method: ScoreMethod,
    config: &SolverConfig,
) -> Result<(ScoreTable, Option<SolverReport>), ScoreError> {
    Ok(match method {
        ScoreMethod::Basic => (basic_wizscore(net), None),
        ScoreMethod::FairOnelevel => (fair_wizscore_onelevel(net), None),
        ScoreMethod::FairIterative => {
            let (table, report) = fair_wizscore_iterative(net, config)?;
            (table, Some(report))
        }
    })
}
