//! Smoothed likelihood of producing a new wizword: `1 / (count + 2)`.
//!
//! Globally `count` is the number of wizwords in the net; locally (based on a
//! node `x`) it is the number of wizwords that reference `x`.

use serde::Serialize;

use crate::classify::{ClassLabel, Classification};
use crate::wizpath::PathError;
use crate::wordnet::WordNet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LikelihoodKind {
    Global,
    Local,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LikelihoodReport {
    pub kind: LikelihoodKind,
    pub count: usize,
    pub likelihood: f64,
    /// Node the local likelihood is conditioned on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub based_on: Option<String>,
}

fn smoothed(count: usize) -> f64 {
    1.0 / (count as f64 + 2.0)
}

pub fn global_wizword_likelihood(classification: &Classification) -> LikelihoodReport {
    let count = classification.counts().wizword;
    LikelihoodReport {
        kind: LikelihoodKind::Global,
        count,
        likelihood: smoothed(count),
        based_on: None,
    }
}

pub fn local_wizword_likelihood(
    net: &WordNet,
    classification: &Classification,
    x: &str,
) -> Result<LikelihoodReport, PathError> {
    let xi = net
        .index_of(x)
        .ok_or_else(|| PathError::UnknownNode(x.to_string()))?;
    let count = net
        .referrers(xi)
        .iter()
        .filter(|&&(src, _)| classification.label(net.id(src).as_str()) == Some(ClassLabel::Wizword))
        .count();
    Ok(LikelihoodReport {
        kind: LikelihoodKind::Local,
        count,
        likelihood: smoothed(count),
        based_on: Some(x.to_string()),
    })
}
