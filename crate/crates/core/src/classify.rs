//! Three-way partition of a wordnet into wizwords, buzzwords and plain words,
//! plus extraction of the induced wiznet and buzznet.
//!
//! A node is a wizword when its score reaches `tau`. Otherwise it is a
//! buzzword when its in-degree is positive and at least the
//! `buzz_quantile` nearest-rank quantile of the positive in-degrees.
//! Everything else is plain.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wizscore::{ScoreMethod, ScoreTable};
use crate::wordnet::{WordId, WordNet};

#[derive(Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("no score for node `{0}`")]
    MissingScore(String),
    #[error("invalid classification config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassLabel {
    Wizword,
    Buzzword,
    Plain,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassLabel::Wizword => "wizword",
            ClassLabel::Buzzword => "buzzword",
            ClassLabel::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationConfig {
    pub tau: f64,
    pub buzz_quantile: f64,
    pub score_method: ScoreMethod,
}

impl Default for ClassificationConfig {
    fn default() -> Self {
        ClassificationConfig {
            tau: 0.75,
            buzz_quantile: 0.9,
            score_method: ScoreMethod::FairOnelevel,
        }
    }
}

impl ClassificationConfig {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(ClassifyError::InvalidConfig(format!(
                "tau {} must lie in (0, 1]",
                self.tau
            )));
        }
        if !(self.buzz_quantile > 0.0 && self.buzz_quantile < 1.0) {
            return Err(ClassifyError::InvalidConfig(format!(
                "buzz_quantile {} must lie in (0, 1)",
                self.buzz_quantile
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassEntry {
    pub label: ClassLabel,
    /// The score the label was derived from.
    pub score: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub wizword: usize,
    pub buzzword: usize,
    pub plain: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    entries: BTreeMap<WordId, ClassEntry>,
    config_used: ClassificationConfig,
}

impl Classification {
    /// Wraps externally chosen labels, e.g. for what-if analyses.
    pub fn new(entries: BTreeMap<WordId, ClassEntry>, config_used: ClassificationConfig) -> Self {
        Classification {
            entries,
            config_used,
        }
    }

    pub fn config(&self) -> &ClassificationConfig {
        &self.config_used
    }

    pub fn get(&self, id: &str) -> Option<&ClassEntry> {
        self.entries.get(id)
    }

    pub fn label(&self, id: &str) -> Option<ClassLabel> {
        self.entries.get(id).map(|e| e.label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WordId, &ClassEntry)> + '_ {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn counts(&self) -> ClassCounts {
        let mut counts = ClassCounts::default();
        for entry in self.entries.values() {
            match entry.label {
                ClassLabel::Wizword => counts.wizword += 1,
                ClassLabel::Buzzword => counts.buzzword += 1,
                ClassLabel::Plain => counts.plain += 1,
            }
        }
        counts
    }

    /// Per node index of `net`: whether the node carries `label`. Nodes
    /// missing from the classification never match.
    pub fn mask(&self, net: &WordNet, label: ClassLabel) -> Vec<bool> {
        net.ids()
            .iter()
            .map(|id| self.label(id.as_str()) == Some(label))
            .collect()
    }
}

/// Nearest-rank `q`-quantile of the positive in-degrees, `None` if there are none.
pub fn buzz_threshold(net: &WordNet, q: f64) -> Option<usize> {
    let mut degrees: Vec<usize> = net.in_degrees().into_iter().filter(|&d| d > 0).collect();
    if degrees.is_empty() {
        return None;
    }
    degrees.sort_unstable();
    let rank = ((q * degrees.len() as f64).ceil() as usize).clamp(1, degrees.len());
    Some(degrees[rank - 1])
}

pub fn classify_words(
    net: &WordNet,
    scores: &ScoreTable,
    config: &ClassificationConfig,
) -> Result<Classification, ClassifyError> {
    config.validate()?;
    let threshold = buzz_threshold(net, config.buzz_quantile);
    let mut entries = BTreeMap::new();
    for (i, id) in net.ids().iter().enumerate() {
        let score = scores
            .get(id.as_str())
            .ok_or_else(|| ClassifyError::MissingScore(id.to_string()))?;
        let degree = net.in_degree(i);
        let label = if score >= config.tau {
            ClassLabel::Wizword
        } else if degree > 0 && threshold.is_some_and(|t| degree >= t) {
            ClassLabel::Buzzword
        } else {
            ClassLabel::Plain
        };
        entries.insert(id.clone(), ClassEntry { label, score });
    }
    Ok(Classification {
        entries,
        config_used: *config,
    })
}

/// Induced subgraph on the wizwords.
pub fn extract_wiznet(net: &WordNet, classification: &Classification) -> WordNet {
    let mask = classification.mask(net, ClassLabel::Wizword);
    net.induced_subgraph(|i| mask[i])
}

/// Induced subgraph on the buzzwords.
pub fn extract_buzznet(net: &WordNet, classification: &Classification) -> WordNet {
    let mask = classification.mask(net, ClassLabel::Buzzword);
    net.induced_subgraph(|i| mask[i])
}
