//! Seeded growth model for synthetic wordnets.
//!
//! The net starts as a complete directed clique on `m + 1` nodes. Each later
//! node adds `m` distinct references to earlier nodes, each target drawn
//!
//! * with probability `alpha` proportionally to `in_degree + 1` (rich get richer),
//! * with probability `beta` by copying a random reference of a random
//!   earlier node (following the flow),
//! * otherwise uniformly.
//!
//! Attachment weights use the in-degrees as they stood before the arriving
//! node; a duplicate target is discarded and redrawn from scratch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wordnet::{WordNet, WordNetBuilder};

/// Identifier of the random generator, recorded alongside generated nets.
pub const RNG_ALGORITHM: &str = "ChaCha20Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Error, PartialEq)]
pub enum SimulateError {
    #[error("invalid growth parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    #[default]
    Unit,
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    pub n_nodes: usize,
    pub m_edges_per_node: usize,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    pub weight_mode: WeightMode,
}

impl GrowthParams {
    pub fn validate(&self) -> Result<(), SimulateError> {
        let bad = |msg: String| Err(SimulateError::InvalidParams(msg));
        if self.n_nodes < 2 {
            return bad(format!("n_nodes {} must be at least 2", self.n_nodes));
        }
        if self.m_edges_per_node < 1 || self.m_edges_per_node >= self.n_nodes {
            return bad(format!(
                "m_edges_per_node {} must lie in [1, n_nodes)",
                self.m_edges_per_node
            ));
        }
        if !(0.0..=1.0).contains(&self.alpha) || !(0.0..=1.0).contains(&self.beta) {
            return bad("alpha and beta must lie in [0, 1]".into());
        }
        if self.alpha + self.beta > 1.0 + 1e-12 {
            return bad(format!("alpha + beta = {} exceeds 1", self.alpha + self.beta));
        }
        Ok(())
    }

    /// Edge count of the generated net: every node holds exactly `m` references.
    pub fn expected_edges(&self) -> usize {
        self.n_nodes * self.m_edges_per_node
    }
}

/// Sidecar metadata describing how a net was generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationMetadata {
    pub params: GrowthParams,
    pub rng_algorithm: String,
    pub node_count: usize,
    pub edge_count: usize,
}

fn node_name(i: usize, width: usize) -> String {
    format!("n{i:0width$}")
}

pub fn generate_wordnet(params: &GrowthParams) -> Result<WordNet, SimulateError> {
    params.validate()?;
    let n = params.n_nodes;
    let m = params.m_edges_per_node;
    let mut rng = ChaCha20Rng::seed_from_u64(params.seed);

    let weight = |rng: &mut ChaCha20Rng| match params.weight_mode {
        WeightMode::Unit => 1.0,
        WeightMode::UniformRandom => rng.gen::<f64>(),
    };

    // references[i]: targets chosen by node i, in draw order
    let mut references: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    // each node once for the +1, plus one entry per received reference
    let mut pool: Vec<usize> = Vec::with_capacity(n * (m + 1));

    for i in 0..=m {
        let refs = (0..=m)
            .filter(|&j| j != i)
            .map(|j| (j, weight(&mut rng)))
            .collect();
        references.push(refs);
    }
    for i in 0..=m {
        pool.push(i);
        pool.extend(std::iter::repeat_n(i, m));
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    for t in (m + 1)..n {
        chosen.clear();
        while chosen.len() < m {
            let draw: f64 = rng.gen();
            let target = if draw < params.alpha {
                pool[rng.gen_range(0..pool.len())]
            } else if draw < params.alpha + params.beta {
                let via = &references[rng.gen_range(0..t)];
                via[rng.gen_range(0..via.len())].0
            } else {
                rng.gen_range(0..t)
            };
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        let refs: Vec<(usize, f64)> = chosen.iter().map(|&c| (c, weight(&mut rng))).collect();
        pool.push(t);
        pool.extend_from_slice(&chosen);
        references.push(refs);
    }

    let width = (n - 1).to_string().len();
    let mut builder = WordNetBuilder::new();
    for (source, refs) in references.iter().enumerate() {
        let source = node_name(source, width);
        for &(target, w) in refs {
            builder
                .add_edge(&source, &node_name(target, width), w)
                .expect("generated edges are valid");
        }
    }
    Ok(builder.build())
}

pub fn generation_metadata(params: &GrowthParams, net: &WordNet) -> GenerationMetadata {
    GenerationMetadata {
        params: *params,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        node_count: net.node_count(),
        edge_count: net.edge_count(),
    }
}
