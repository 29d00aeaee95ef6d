//! Quality metrics for directed reference networks.
//!
//! A corpus of "words" (any unit of data) is modeled as a [`WordNet`] in
//! which an edge `a -> b` means that `a` refers to `b`. On top of that model
//! the crate provides:
//!
//! * [`wizscore`]: basic, fair and damped-iterative quality scores
//! * [`classify`]: wizword / buzzword / plain partition and subnet extraction
//! * [`complexity`]: global and local wizword-generation likelihoods
//! * [`wizpath`]: shortest and widest influence paths between wizwords, reach
//!   and coverage
//! * [`hypotheses`]: Pareto share, Gini, power-law tail fits and reach comparison
//! * [`simulate`]: a seeded growth model for synthetic wordnets

pub mod classify;
pub mod complexity;
pub mod hypotheses;
pub mod io;
pub mod simulate;
pub mod wizpath;
pub mod wizscore;
pub mod wordnet;

pub use classify::{
    classify_words, extract_buzznet, extract_wiznet, ClassEntry, ClassLabel, Classification,
    ClassCounts, ClassificationConfig, ClassifyError,
};
pub use complexity::{
    global_wizword_likelihood, local_wizword_likelihood, LikelihoodKind, LikelihoodReport,
};
pub use hypotheses::{
    degree_histogram, fit_power_law, gini, pareto_share, reach_comparison, HypothesisError,
    ParetoReport, PowerLawFit, ReachComparison,
};
pub use io::{format_significant, load_wordnet, GraphFormat};
pub use simulate::{
    generate_wordnet, generation_metadata, GenerationMetadata, GrowthParams, SimulateError,
    WeightMode, RNG_ALGORITHM,
};
pub use wizpath::{
    influence_reach, shortest_wizpath, widest_wizpath, wiznet_coverage, PathError, WizPath,
};
pub use wizscore::{
    basic_wizscore, fair_wizscore_iterative, fair_wizscore_onelevel, score, wizscore_percentage,
    ScoreError, ScoreMethod, ScoreTable, SolverConfig, SolverReport,
};
pub use wordnet::{
    DegreeSummary, DuplicatePolicy, Reference, WordId, WordNet, WordNetBuilder, WordNetError,
};
