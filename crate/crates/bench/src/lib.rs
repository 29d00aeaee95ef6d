//! Shared fixtures for the criterion benchmarks.

use wizdata_core::{generate_wordnet, GrowthParams, WeightMode, WordNet};

/// Preferential-attachment net with random weights, fixed seed.
pub fn fixture(n_nodes: usize) -> WordNet {
    generate_wordnet(&GrowthParams {
        n_nodes,
        m_edges_per_node: 3,
        alpha: 0.7,
        beta: 0.2,
        seed: 1,
        weight_mode: WeightMode::UniformRandom,
    })
    .expect("fixture parameters are valid")
}
